use virasoro_core::algebra::{rat, MultiPoly};
use virasoro_core::verma::{gram, level_dimension, singular_charges, vacuum_basis, PartitionWord, CHARGE};

#[test]
fn level_dimensions() {
    let dims: Vec<usize> = (0..=12).map(|n| vacuum_basis(n).len()).collect();
    assert_eq!(dims, [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12, 14, 21]);
    for n in 0..=20 {
        assert_eq!(level_dimension(n), vacuum_basis(n).len());
    }
}

#[test]
fn basis_is_lexicographic() {
    let b: Vec<Vec<u32>> = vacuum_basis(6).iter().map(|w| w.parts().to_vec()).collect();
    assert_eq!(b, [vec![2, 2, 2], vec![3, 3], vec![4, 2], vec![6]]);
}

#[test]
fn omega_norm() {
    let g = gram(2);
    assert_eq!(g.basis, vec![PartitionWord::omega()]);
    assert_eq!(g.det, MultiPoly::var(CHARGE).scale(&rat(1, 2)));
}

#[test]
fn singular_charges_low_levels() {
    assert_eq!(singular_charges(4).unwrap(), [rat(-22, 5), rat(0, 1)]);
    assert_eq!(
        singular_charges(6).unwrap(),
        [rat(-68, 7), rat(-22, 5), rat(0, 1), rat(1, 2)]
    );
}

#[test]
fn level_twelve_determinant_splits() {
    let g = gram(12);
    assert_eq!(g.dim(), 21);
    assert!(g.factored.is_complete());
    assert_eq!(g.factored.expand(), g.det);
    let roots = singular_charges(12).unwrap();
    for r in [rat(-350, 13), rat(-25, 7), rat(7, 10)] {
        assert!(roots.contains(&r), "missing {r}");
    }
}

#[test]
fn gram_export_round_trips() {
    let g = gram(6);
    let json = serde_json::to_string(&g.export()).unwrap();
    let back: virasoro_core::verma::GramExport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, g.export());
}
