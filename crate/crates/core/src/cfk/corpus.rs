use super::{Arrow, BifilteredComplex, CfkError, Generator};

/// Named entries shipped with the crate, as JSON documents.
pub const CATALOG: &[(&str, &str)] = &[
    ("unknot", include_str!("../../corpus/unknot.json")),
    ("trefoil_staircase", include_str!("../../corpus/trefoil_staircase.json")),
    ("fig8_box", include_str!("../../corpus/fig8_box.json")),
    ("torus_2_5", include_str!("../../corpus/torus_2_5.json")),
    ("torus_2_7", include_str!("../../corpus/torus_2_7.json")),
    ("torus_3_4", include_str!("../../corpus/torus_3_4.json")),
    ("torus_3_5", include_str!("../../corpus/torus_3_5.json")),
];

pub fn corpus_names() -> Vec<String> {
    CATALOG.iter().map(|(n, _)| n.to_string()).collect()
}

/// Looks up a model by name.
///
/// Besides the catalog, `staircase:1,2,2,1` builds the staircase with the
/// given steps and `mirror:<name>` mirrors any other entry.
///
/// ```
/// use splice_rank::cfk::corpus;
/// let t = corpus("staircase:1,1").unwrap();
/// assert_eq!(t.ambient_rank().unwrap(), 1);
/// assert_eq!(corpus("mirror:trefoil_staircase").unwrap().alexander_range(), (-1, 1));
/// ```
pub fn corpus(name: &str) -> Result<BifilteredComplex, CfkError> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    if let Some(inner) = name.strip_prefix("mirror:") {
        return Ok(corpus(inner)?.mirror());
    }
    if let Some(steps) = name.strip_prefix("staircase:") {
        let parsed: Result<Vec<u32>, _> = steps.split(',').map(|s| s.trim().parse()).collect();
        return match parsed {
            Ok(steps) => staircase(&steps),
            Err(_) => Err(CfkError::UnknownName(name.to_string())),
        };
    }
    let (_, text) = CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CfkError::UnknownName(name.to_string()))?;
    Ok(BifilteredComplex::from_json(text).expect("catalog entries parse"))
}

/// The staircase complex with the given step lengths: generators
/// `x0 .. xn` climbing in alexander grading, with horizontal and vertical
/// arrows alternating out of the odd-indexed generators.
pub fn staircase(steps: &[u32]) -> Result<BifilteredComplex, CfkError> {
    let n = steps.len();
    let palindromic = steps.iter().eq(steps.iter().rev());
    if n == 0 || n % 2 == 1 || !palindromic || steps.contains(&0) {
        return Err(CfkError::BadStaircase(steps.to_vec()));
    }
    let total: u32 = steps.iter().sum();
    let mut s = -(total as i32) / 2;
    let mut generators = Vec::with_capacity(n + 1);
    for (k, step) in steps.iter().chain([&0]).enumerate() {
        generators.push(Generator {
            id: format!("x{k}"),
            alexander: s,
        });
        s += *step as i32;
    }
    let mut arrows = Vec::with_capacity(n);
    for k in (0..n).step_by(2) {
        arrows.push(Arrow {
            from: k + 1,
            to: k,
            drop_i: steps[k],
            drop_j: 0,
        });
        arrows.push(Arrow {
            from: k + 1,
            to: k + 2,
            drop_i: 0,
            drop_j: steps[k + 1],
        });
    }
    let list: Vec<String> = steps.iter().map(u32::to_string).collect();
    Ok(
        BifilteredComplex::from_parts(format!("staircase:{}", list.join(",")), generators, arrows)
            .with_symmetry(Some((0..=n).map(|i| n - i).collect())),
    )
}
