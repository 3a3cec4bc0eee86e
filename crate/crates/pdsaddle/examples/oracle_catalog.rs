//! Build catalog functions, evaluate their proximal maps and validate their declared constants.

use pdsaddle::linalg::Vector;
use pdsaddle::oracle::{make_oracle, validate_oracle, ConvexSet, OracleCatalogEntry, QuadraticWeight};

fn main() -> pdsaddle::Result<()> {
    let entries = vec![
        OracleCatalogEntry::Quadratic { weight: QuadraticWeight::Scalar(2.0), center: vec![1.0, -1.0, 0.0] },
        OracleCatalogEntry::L1 { dim: 3, weight: 0.5 },
        OracleCatalogEntry::IndicatorBall { dim: 3, radius: 1.0 },
        OracleCatalogEntry::IndicatorBox { lo: vec![-1.0; 3], hi: vec![0.5; 3] },
        OracleCatalogEntry::QuadraticIndicator { scale: 1.0, linear: vec![0.3, -0.2, 0.1], set: ConvexSet::Nonneg },
    ];
    let v = Vector::from_vec(vec![2.0, -0.3, 0.8]);
    for entry in entries {
        let oracle = make_oracle(entry)?;
        let p = oracle.prox(0.5, &v)?;
        let report = validate_oracle(&oracle, 500, 3.0, 0);
        println!(
            "{:<20} mu={:<6} L={:<6} prox_0.5(v)={:?} validation={}",
            oracle.kind_name(),
            oracle.mu(),
            oracle.lip(),
            p.iter().map(|t| (t * 1e4).round() / 1e4).collect::<Vec<_>>(),
            if report.pass { "pass" } else { "FAIL" },
        );
    }
    Ok(())
}
