//! What the validator reports for models that break the standing
//! hypotheses, and what the parser rejects outright.

use chainspec::format::parse_model;
use chainspec::model::validate_concrete;
use chainspec::ConcreteModel;

fn main() -> chainspec::Result<()> {
    // σ(0) = 1 but block {1, 2} is only partly in the range.
    let incompatible = ConcreteModel::from_parts(3, [(0, 1)], [vec![0], vec![1, 2]])?;
    // Valid, but dom σ = {0} cuts the block {0, 1}.
    let unextended = ConcreteModel::from_parts(3, [(0, 2)], [vec![0, 1], vec![2]])?;

    for model in [&incompatible, &unextended] {
        let report = validate_concrete(model);
        println!("valid: {}", report.is_valid());
        for (name, check) in report.checks() {
            if !check.passed {
                println!("  {name} fails at {:?}", check.witnesses);
            }
        }
    }

    for text in [
        r#"{"kind":"concrete","size":2,"sigma":[[0,1],[1,1]],"partition":[[0],[1]]}"#,
        r#"{"kind":"concrete","size":2,"sigma":[[1,0],[0,1]],"partition":[[0],[1]]}"#,
        r#"{"kind":"concrete","size":2,"sigma":[],"partition":[[0]]}"#,
    ] {
        match parse_model(text) {
            Ok(_) => println!("accepted {text}"),
            Err(e) => println!("rejected: {e}"),
        }
    }
    Ok(())
}
