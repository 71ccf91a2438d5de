//! Decides the universal cover of a surface from its numerical invariants,
//! with a consistency report and partial records.

use polycurve::cover::{
    classify_surface, consistency_report, consistency_report_for, frozen_examples, Cover, SurfaceInvariants,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (rec, _) in frozen_examples() {
        let v = classify_surface(&rec);
        let why = if v.fired_rule.is_empty() { &v.reason } else { &v.fired_rule };
        println!("{:<14} {why}", v.cover.to_string());
    }

    let partial: SurfaceInvariants = serde_json::from_str(r#"{"K2": 9, "chi": 1}"#)?;
    let v = classify_surface(&partial);
    println!("partial record: {} (missing {:?})", v.cover, v.missing_data);

    let broken: SurfaceInvariants = serde_json::from_str(r#"{"chi": 3, "q": 0, "p_g": 1}"#)?;
    let claimed: SurfaceInvariants = serde_json::from_str(r#"{"K2": 8, "chi": 2}"#)?;
    let findings = consistency_report(&broken).into_iter().chain(consistency_report_for(&claimed, Some(Cover::HxH)));
    for f in findings {
        println!("{:?}: {} ({})", f.level, f.condition, f.message);
    }
    Ok(())
}
