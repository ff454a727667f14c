//! Graded dimensions of the Fock spaces, checked against colored-partition counts.

use tgla::catalog::find;

/// Coefficients of Π_k (1 − x^k)^{−colors(k)} up to x^max.
fn colored_partitions(colors: impl Fn(u32) -> u64, max: usize) -> Vec<u64> {
    let mut f = vec![0u64; max + 1];
    f[0] = 1;
    for k in 1..=max {
        for _ in 0..colors(k as u32) {
            for d in k..=max {
                f[d] += f[d - k];
            }
        }
    }
    f
}

fn dims(name: &str) -> Vec<u64> {
    let b = find(name).unwrap().build().unwrap();
    let fock = b.fock();
    (0..=8).map(|d| fock.heisenberg().graded_dimension(d)).collect()
}

#[test]
fn graded_dimensions_are_colored_partitions() {
    let odd = |c: u64| move |k: u32| if k % 2 == 1 { c } else { 0 };
    let cases: [(&str, Vec<u64>, Vec<u64>); 7] = [
        ("A1/Id/1", colored_partitions(|_| 2, 8), vec![1, 2, 5, 10, 20, 36, 65, 110, 185]),
        ("A1/-Id/2", colored_partitions(odd(2), 8), vec![1, 2, 3, 6, 9, 14, 22, 32, 46]),
        ("A2/-Id/2", colored_partitions(odd(3), 8), vec![1, 3, 6, 13, 24, 42, 73, 120, 192]),
        ("A2/coxeter/3", colored_partitions(|_| 1, 8), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]),
        ("D2/diagram/2", colored_partitions(|_| 1, 8), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]),
        ("0/Id/1", colored_partitions(|_| 1, 8), vec![1, 1, 2, 3, 5, 7, 11, 15, 22]),
        ("0/-Id/2", colored_partitions(odd(1), 8), vec![1, 1, 1, 2, 2, 3, 4, 5, 6]),
    ];
    for (name, oracle, frozen) in cases {
        assert_eq!(oracle, frozen, "{name} oracle");
        assert_eq!(dims(name), frozen, "{name}");
    }
}
