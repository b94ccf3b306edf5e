mod common;

use cellsheaf::homology::homology_dims;
use cellsheaf::maps::CellularMap;
use cellsheaf::persistence::{check_persistence_corollary, persistence_cosheaves};
use cellsheaf::sheaf::CellCosheaf;
use cellsheaf::Field;

#[test]
fn models_are_cellular_surfaces() {
    for f in [common::sphere_height(), common::torus_height()] {
        assert!(f.source.validate().passed(), "{:?}", f.source.validate());
        assert!(CellularMap::new(f.clone()).is_valid());
    }
    let k = |f: &cellsheaf::maps::PosetMap| homology_dims(&CellCosheaf::constant(&f.source, Field::Rational, 1));
    assert_eq!(k(&common::sphere_height()), vec![1, 0, 1]);
    assert_eq!(k(&common::torus_height()), vec![1, 2, 1]);
}

#[test]
fn torus_persistence_stalks() {
    let f = common::torus_height();
    let fs = persistence_cosheaves(&f, &CellCosheaf::constant(&f.source, Field::Rational, 1)).unwrap();
    let order = ["x", "a", "y", "b", "z", "c", "w"];
    let dims = |i: usize| order.iter().map(|c| fs[i].dims[f.target.index_of(c).unwrap()]).collect::<Vec<_>>();
    assert_eq!(dims(0), vec![1, 1, 1, 2, 1, 1, 1]);
    assert_eq!(dims(1), vec![0, 1, 2, 2, 2, 1, 0]);
}

#[test]
fn corollary_on_height_models() {
    for f in [common::sphere_height(), common::torus_height()] {
        let r = check_persistence_corollary(&f, &[0, 1, 2]).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}
