use super::ResolvableDesign;

// Seven days of five triples over 1..=15. The first two days are the
// parallel classes behind the local parities l1..l10 of the (30, 15, 3, 2)
// showcase code; the rest completes them to a Kirkman triple system.
const KTS15: [[[usize; 3]; 5]; 7] = [
    [[1, 2, 3], [6, 7, 8], [11, 12, 13], [4, 9, 14], [5, 10, 15]],
    [[1, 5, 6], [4, 7, 11], [8, 9, 12], [3, 10, 14], [2, 13, 15]],
    [[1, 4, 8], [2, 6, 12], [3, 5, 11], [7, 14, 15], [9, 10, 13]],
    [[1, 7, 13], [2, 9, 11], [3, 8, 15], [4, 6, 10], [5, 12, 14]],
    [[1, 9, 15], [2, 4, 5], [3, 7, 12], [6, 13, 14], [8, 10, 11]],
    [[1, 10, 12], [2, 8, 14], [3, 4, 13], [5, 7, 9], [6, 11, 15]],
    [[1, 11, 14], [2, 7, 10], [3, 6, 9], [4, 12, 15], [5, 8, 13]],
];

/// A Kirkman triple system on 15 points: the 2-(15, 35, 7, 3, 1) resolvable design.
pub fn build_kirkman15() -> ResolvableDesign {
    let classes = KTS15
        .iter()
        .map(|day| day.iter().map(|t| t.iter().map(|p| p - 1).collect()).collect())
        .collect();
    ResolvableDesign::new(15, 3, 1, classes).expect("static table is in range")
}
