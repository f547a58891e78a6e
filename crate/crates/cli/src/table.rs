//! Plain-text renderings of the command results.

use repvar_core::chern::ChernReport;
use repvar_core::hessian::HessianReport;
use repvar_core::invariants::KhovanovComparison;
use repvar_core::variety::VarietyReport;
use repvar_core::verify::Scorecard;
use std::fmt::Write;

pub fn variety(
    r: &VarietyReport,
    name: Option<&str>,
    rank: Option<u64>,
    kh: Option<&KhovanovComparison>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "braid      {}{}",
        r.braid,
        name.map(|n| format!(" ({n})")).unwrap_or_default()
    );
    let _ = writeln!(s, "status     {:?}", r.status);
    let _ = writeln!(s, "solutions  {}", r.solutions);
    let _ = writeln!(
        s,
        "{:>3}  {:>3}  {:<16} {:>7}  {:>7}  {:>8}",
        "id", "dim", "tag", "samples", "abelian", "dihedral"
    );
    for c in &r.components {
        let _ = writeln!(
            s,
            "{:>3}  {:>3}  {:<16} {:>7}  {:>7}  {:>8}",
            c.id,
            c.est_dimension,
            format!("{:?}", c.topology_tag),
            c.sample_count,
            c.is_abelian,
            c.is_binary_dihedral
        );
    }
    if let Some(rk) = rank {
        let _ = writeln!(s, "rank H*(;Q) {rk}");
    }
    if let Some(k) = kh {
        let _ = writeln!(
            s,
            "khovanov   {} (difference {})",
            k.khovanov_rank.map(|v| v.to_string()).unwrap_or("-".into()),
            k.difference.map(|v| v.to_string()).unwrap_or("-".into())
        );
    }
    s
}

pub fn scorecard(c: &Scorecard) -> String {
    let mut s = String::new();
    for r in &c.checks {
        let n = r.n.map(|v| v.to_string()).unwrap_or("-".into());
        let _ = writeln!(
            s,
            "{:<4} {:<28} n={:<3} trials={:<6} max_dev={:.3e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.check,
            n,
            r.trials,
            r.max_deviation
        );
    }
    let _ = writeln!(s, "overall {}", if c.pass { "PASS" } else { "FAIL" });
    s
}

pub fn hessian(r: &HessianReport) -> String {
    let mut s = String::new();
    for row in &r.matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    let _ = writeln!(s, "PHP = -H      {}", r.php_is_minus_h);
    let _ = writeln!(
        s,
        "signature     {} (min |eig| {:.4})",
        r.signature.signature, r.signature.min_abs_eigenvalue
    );
    let _ = writeln!(
        s,
        "Pf(H')        {} (expansion {}, recurrence {})",
        r.pfaffian_elimination, r.pfaffian_expansion, r.pfaffian_recurrence
    );
    if let Some(d) = &r.det {
        let _ = writeln!(s, "det H         {} = Pf^4: {}", d.det_h, d.holds);
    }
    let _ = writeln!(s, "overall       {}", if r.pass { "PASS" } else { "FAIL" });
    s
}

pub fn chern(r: &ChernReport) -> String {
    format!(
        "modulus ok   {}\njunctions ok {}\nwinding K    {}\nwinding K'   {}\nmirrored     {}\npairing      {}\noverall      {}\n",
        r.per_segment_modulus_ok,
        r.junction_ok,
        r.winding_k,
        r.winding_kprime,
        r.winding_mirrored,
        r.pairing,
        if r.pass { "PASS" } else { "FAIL" }
    )
}
