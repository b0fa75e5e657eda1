use super::VerifierReport;
use crate::error::{Error, Result};
use crate::graph::BipGraph;
use crate::graph6;
use crate::matching::{count_h1t, count_matchings, h1t_multiplicity};
use crate::pattern::count_embeddings;

fn factorial(t: usize) -> Result<u128> {
    (1..=t as u128).try_fold(1u128, |a, b| a.checked_mul(b)).ok_or(Error::Overflow("factorial"))
}

fn pow(x: u128, k: usize) -> Result<u128> {
    x.checked_pow(k as u32).ok_or(Error::Overflow("power"))
}

/// t-matchings versus e^t / (2^t t!), for bipartite graphs with e ≥ 4t·v(G).
pub fn verify_matching_count(g: &BipGraph, t: usize) -> Result<VerifierReport> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let mut rep = VerifierReport::new("match-count");
    let e = g.edge_count() as u128;
    let v = g.vertex_count() as u128;
    let lhs = count_matchings(g, t)? as u128;
    let scale = pow(2, t)? * factorial(t)?;
    let et = pow(e, t)?;
    rep.precondition_met = e >= 4 * t as u128 * v;
    rep.hypothesis_met = true;
    rep.lhs = lhs as f64;
    rep.rhs = et as f64 / scale as f64;
    rep.detail("edges", e as u64);
    rep.detail("vertices", v as u64);
    rep.detail("t", t);
    rep.detail("threshold", (4 * t as u128 * v) as u64);
    if rep.precondition_met {
        let lhs_scaled = lhs.checked_mul(scale).ok_or(Error::Overflow("matching count"))?;
        let holds = lhs_scaled >= et;
        rep.holds = Some(holds);
        if !holds {
            rep.counterexample = Some(vec![graph6::encode(g.graph())]);
        }
    }
    Ok(rep)
}

/// H_{1,t} copies versus e^{3t+1} / (2^{5t+2} t! |A|^{2t} |B|^{2t}), for
/// e ≥ 4√(2t)·n^{3/2}. The right side is evaluated in floating point and
/// compared with relative tolerance 1e-9.
pub fn verify_h1t_count(g: &BipGraph, t: usize) -> Result<VerifierReport> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    let mut rep = VerifierReport::new("h1t-count");
    let e = g.edge_count() as u128;
    let n = g.vertex_count() as u128;
    let (na, nb) = (g.part_a().len() as f64, g.part_b().len() as f64);
    // e ≥ 4√(2t)·n^{3/2}  ⇔  e² ≥ 32t·n³
    let n3 = n.checked_pow(3).ok_or(Error::Overflow("n^3"))?;
    rep.precondition_met = e * e >= 32 * t as u128 * n3;
    rep.hypothesis_met = true;
    rep.detail("edges", e as u64);
    rep.detail("vertices", n as u64);
    rep.detail("t", t);
    rep.detail("threshold", 4.0 * (2.0 * t as f64).sqrt() * (n as f64).powf(1.5));
    let lhs = count_h1t(g, t)?;
    rep.lhs = lhs as f64;
    let ef = e as f64;
    let tf = t as f64;
    let log_rhs = (3.0 * tf + 1.0) * ef.ln()
        - (5.0 * tf + 2.0) * 2f64.ln()
        - (factorial(t)? as f64).ln()
        - 2.0 * tf * (na.ln() + nb.ln());
    rep.rhs = if e == 0 { 0.0 } else { log_rhs.exp() };
    // labelled count for reference: each copy contributes |Aut(H_{1,t})| maps
    rep.detail("scan_multiplicity", h1t_multiplicity(t)?);
    if g.vertex_count() <= 12 {
        let h = crate::families::gen_cube(1, t)?;
        rep.detail("labelled_embeddings", count_embeddings(g.graph(), h.graph())?);
    }
    if rep.precondition_met {
        let holds = rep.lhs >= rep.rhs * (1.0 - 1e-9);
        rep.holds = Some(holds);
        if !holds {
            rep.counterexample = Some(vec![graph6::encode(g.graph())]);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::complete_bipartite;

    #[test]
    fn matching_count_examples() {
        let r = verify_matching_count(&complete_bipartite(20, 20), 2).unwrap();
        assert!(r.precondition_met);
        assert_eq!((r.lhs, r.rhs), (72200.0, 20000.0));
        assert_eq!(r.holds, Some(true));
        let r = verify_matching_count(&complete_bipartite(4, 4), 1).unwrap();
        assert!(!r.precondition_met);
        assert_eq!(r.holds, None);
    }

    #[test]
    fn h1t_reporting_path() {
        let r = verify_h1t_count(&complete_bipartite(3, 3), 1).unwrap();
        assert!(!r.precondition_met);
        assert_eq!(r.lhs, 9.0);
        assert_eq!(r.holds, None);
    }

    #[test]
    fn complete_bipartite_sweep() {
        for a in [150usize, 200, 250, 300] {
            let r = verify_h1t_count(&complete_bipartite(a, a), 1).unwrap();
            let c2 = (a * (a - 1) / 2) as f64;
            assert_eq!(r.lhs, c2 * c2);
            if r.precondition_met {
                assert_eq!(r.holds, Some(true));
            }
        }
    }
}
