use std::io::Read;

use ybe::{Field, JordanSpec, Matrix};

use crate::{CoefficientArgs, Context, Failure};

/// File contents, or stdin for "-".
pub fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))
}

pub fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure(format!("{path}: {e}")))
}

pub fn load_matrix(ctx: &Context, path: &str) -> Result<Matrix, Failure> {
    let text = read_text(path)?;
    let m = ybe::io::parse_matrix(&text).map_err(|e| Failure(format!("{path}: {e}")))?;
    if let Some(f) = &ctx.field {
        if f != m.field() {
            return Err(Failure(format!(
                "{path}: matrix is over {}, --field says {f}",
                m.field()
            )));
        }
    }
    Ok(m)
}

pub fn field_or_default(ctx: &Context) -> Field {
    ctx.field.clone().unwrap_or(Field::Rationals)
}

pub fn coefficient(ctx: &Context, args: &CoefficientArgs) -> Result<Matrix, Failure> {
    match (&args.a, &args.jordan) {
        (Some(path), _) => load_matrix(ctx, path),
        (None, Some(spec)) => Ok(JordanSpec::parse(&field_or_default(ctx), spec)?.matrix()),
        (None, None) => Err(Failure("give a coefficient with --A or --jordan".into())),
    }
}
