//! Classifies plane cubics up to projective equivalence, exactly and in
//! floating point, and reports what each class forces on the holonomy.

use polycurve::cubic::{
    canonical_forms, classify, classify_float, holonomy_verdict, random_projectivity, PlaneCubic, DEFAULT_TOLERANCE,
};
use polycurve::poly::Domain;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (class, text) in canonical_forms() {
        let c = PlaneCubic::parse(text, Domain::Rational)?;
        let moved = c.transform(&random_projectivity(&mut rng));
        let exact = classify(&moved)?;
        let float = classify_float(&moved, DEFAULT_TOLERANCE)?;
        assert_eq!(exact.class, class);
        println!(
            "{text:<28} exact {:?}, float {:?}, singular {:?}: {:?}",
            exact.class,
            float.class,
            exact.singular.count(),
            holonomy_verdict(exact.class).kind
        );
    }
    Ok(())
}
