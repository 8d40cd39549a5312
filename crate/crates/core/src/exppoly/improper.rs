use super::ExpPoly;
use crate::exactnum::{enclose_enum, ENum, Ival, Rat};
use crate::error::Result;

/// Enclosures of `∫_u^b f` along one sequence of upper endpoints.
#[derive(Debug, Clone)]
pub struct SequenceTrace {
    pub points: Vec<Rat>,
    pub enclosures: Vec<Ival>,
    /// First index from which every enclosure stays inside the target band.
    pub settled_from: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ImproperCheck {
    pub pass: bool,
    pub claimed: Ival,
    pub traces: Vec<SequenceTrace>,
    pub detail: String,
}

/// Checks the sequence definition of `∫_u^{+∞} f` numerically.
///
/// For every upper endpoint `b` the exact Newton integral is enclosed with
/// width at most `eps`; a sequence settles when, from some index on, every
/// enclosure lies inside the enclosure of `claimed` widened by `eps`. The
/// check passes when at least two distinct, strictly increasing sequences are
/// supplied and all of them settle.
pub fn numeric_improper_check(
    f: &ExpPoly,
    u: &Rat,
    claimed: &ENum,
    sequences: &[Vec<Rat>],
    eps: &Rat,
) -> Result<ImproperCheck> {
    let claimed_iv = enclose_enum(claimed, eps)?;
    let band = claimed_iv.inflate(eps);

    let mut problems = Vec::new();
    let distinct = sequences
        .iter()
        .enumerate()
        .all(|(i, s)| sequences[..i].iter().all(|t| t != s));
    if sequences.len() < 2 || !distinct {
        problems.push("need at least two distinct point sequences".to_string());
    }

    let prim = f.primitive();
    let base = prim.value(u);
    let mut traces = Vec::with_capacity(sequences.len());
    for (si, points) in sequences.iter().enumerate() {
        if points.is_empty() || points.windows(2).any(|w| w[0] >= w[1]) {
            problems.push(format!("sequence {si} is empty or not strictly increasing"));
            traces.push(SequenceTrace {
                points: points.clone(),
                enclosures: Vec::new(),
                settled_from: None,
            });
            continue;
        }
        let enclosures = points
            .iter()
            .map(|b| enclose_enum(&(&prim.value(b) - &base), eps))
            .collect::<Result<Vec<_>>>()?;
        let inside: Vec<bool> = enclosures.iter().map(|iv| band.contains_ival(iv)).collect();
        let settled_from = match inside.iter().rposition(|ok| !ok) {
            None => Some(0),
            Some(last_bad) if last_bad + 1 < inside.len() => Some(last_bad + 1),
            Some(_) => None,
        };
        if settled_from.is_none() {
            let last = enclosures.last().unwrap();
            problems.push(format!(
                "sequence {si} ends outside the band: last enclosure {last} vs claimed {claimed_iv} ± {eps}"
            ));
        }
        traces.push(SequenceTrace {
            points: points.clone(),
            enclosures,
            settled_from,
        });
    }

    let pass = problems.is_empty();
    let detail = if pass {
        let settled: Vec<String> = traces
            .iter()
            .map(|t| format!("b={}", t.points[t.settled_from.unwrap()]))
            .collect();
        format!("all sequences settled (from {})", settled.join(", "))
    } else {
        problems.join("; ")
    };
    Ok(ImproperCheck {
        pass,
        claimed: claimed_iv,
        traces,
        detail,
    })
}
