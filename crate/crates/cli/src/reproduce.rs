//! Built-in worked examples re-run against reports frozen in EXPECTED.
//! `--print-actual` prints the freshly computed bundle for re-freezing after
//! an intentional behavior change.

use anyhow::Result;
use diffuni::gf2n::FieldContext;
use diffuni::poly::Degree10Coeffs;
use diffuni::quartic;
use diffuni::theorems;
use diffuni::uniformity::ddt_row;
use serde_json::{json, Value};

const SCENARIOS: [&str; 3] = ["klein_bis_f16", "main_witness_n13", "split_witness_n16"];

const EXPECTED: &str = r#"
{
  "klein_bis_f16": {
    "klein_bis": {
      "alpha": "a",
      "b": "a",
      "c": "b",
      "q": "1,a,1",
      "q_roots": [
        "5",
        "f"
      ],
      "q_roots_are_cubes": [
        true,
        true
      ],
      "trace_alpha2": 0,
      "trace_alpha7": 0
    },
    "report": {
      "alpha": "a",
      "conclusion": "inapplicable",
      "conditions": [
        {
          "name": "c_nonzero",
          "pass": true,
          "witness": "c = b"
        },
        {
          "name": "r3_trace_condition",
          "pass": true,
          "witness": "Tr(b^6/c^4) = 0, Tr(1) = 0"
        },
        {
          "name": "q_roots_are_cubes",
          "pass": true,
          "witness": "Q = T^2 + aT + 1"
        },
        {
          "name": "r3_splits",
          "pass": true,
          "witness": "roots of x^3+bx^2+c^2 in field: [6, 7, b]"
        },
        {
          "name": "second_floor_trace_zero",
          "pass": true,
          "witness": "Tr(b/alpha^2) = Tr(b) = 0"
        },
        {
          "name": "kernel_traces_zero",
          "pass": false,
          "witness": "Tr(u/alpha^2) = [0, 1, 1] for kernel roots [1, 6, 7]"
        }
      ],
      "field": {
        "modulus": "19",
        "n": 4
      },
      "min_n": 15,
      "theorem": "a1a3zero"
    }
  },
  "main_witness_n13": {
    "report": {
      "alpha": "0001",
      "conclusion": "delta_ge_6",
      "conditions": [
        {
          "name": "a1a3_nonzero",
          "pass": true,
          "witness": "a_1 = 0001, a_3 = 0001"
        },
        {
          "name": "critical_trace_zero",
          "pass": true,
          "witness": "Tr(0000) = 0"
        },
        {
          "name": "morse_nondegenerate",
          "pass": true,
          "witness": "certificate = 0001"
        }
      ],
      "field": {
        "modulus": "201b",
        "n": 13
      },
      "min_n": 13,
      "theorem": "main"
    },
    "row": {
      "alpha": "0001",
      "d_degree": 6,
      "delta_alpha": 6,
      "first_split_beta": "0012",
      "split_count": 364
    }
  },
  "split_witness_n16": {
    "report": {
      "alpha": "001e",
      "conclusion": "delta_eq_8",
      "conditions": [
        {
          "name": "c_nonzero",
          "pass": true,
          "witness": "c = b321"
        },
        {
          "name": "r3_trace_condition",
          "pass": true,
          "witness": "Tr(b^6/c^4) = 0, Tr(1) = 0"
        },
        {
          "name": "q_roots_are_cubes",
          "pass": true,
          "witness": "Q = T^2 + 4288T + d528"
        },
        {
          "name": "r3_splits",
          "pass": true,
          "witness": "roots of x^3+bx^2+c^2 in field: [2ef7, 9696, a95a]"
        },
        {
          "name": "second_floor_trace_zero",
          "pass": true,
          "witness": "Tr(b/alpha^2) = Tr(0154) = 0"
        },
        {
          "name": "kernel_traces_zero",
          "pass": true,
          "witness": "Tr(u/alpha^2) = [0, 0, 0] for kernel roots [3201, c8ae, faaf]"
        }
      ],
      "field": {
        "modulus": "1002b",
        "n": 16
      },
      "min_n": 15,
      "theorem": "a1a3zero"
    },
    "row": {
      "alpha": "001e",
      "d_degree": 8,
      "delta_alpha": 8,
      "first_split_betas": [
        "0007",
        "000a",
        "0012"
      ],
      "split_count": 8192
    }
  }
}
"#;

/// x^10 + x^3 with the given leading tail of zeros.
fn x10_x3() -> Result<Degree10Coeffs> {
    Ok(Degree10Coeffs::new([1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0])?)
}

/// Worked quartic example over F_16: the checker's verdict at alpha = theta^10
/// plus the resolvent data the example tabulates.
fn klein_bis_f16() -> Result<Value> {
    let ctx = FieldContext::new(4, Some(0x19))?;
    let coeffs = x10_x3()?;
    let alpha = 0xa;
    let report = theorems::thm2_check(&ctx, &coeffs, Some(alpha), None)?;
    let quartic = quartic::reduce_quartic(&ctx, &coeffs, alpha)?;
    let res = quartic::resolvents(&ctx, &quartic)?;
    let (r0, r1) = ctx
        .solve_artin_schreier(ctx.sqr(quartic.c), ctx.pow(quartic.b, 6))?
        .expect("Q splits in the worked example");
    Ok(json!({
        "report": report.to_json(),
        "klein_bis": {
            "alpha": ctx.fmt_element(alpha),
            "b": ctx.fmt_element(quartic.b),
            "c": ctx.fmt_element(quartic.c),
            "q": res.q.fmt(&ctx),
            "q_roots": [ctx.fmt_element(r0), ctx.fmt_element(r1)],
            "q_roots_are_cubes": [ctx.is_cube(r0, false)?, ctx.is_cube(r1, false)?],
            "trace_alpha7": ctx.trace(ctx.pow(alpha, 7)),
            "trace_alpha2": ctx.trace(ctx.sqr(alpha)),
        }
    }))
}

/// Main-criterion instance x^10+x^9+x^7+x^3 at n = 13 with its 6-split row.
fn main_witness_n13() -> Result<Value> {
    let ctx = FieldContext::new(13, None)?;
    let coeffs = Degree10Coeffs::new([1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0])?;
    let report = theorems::thm_main_check(&ctx, &coeffs)?;
    let row = ddt_row(&ctx, &coeffs.to_poly(), 1)?;
    Ok(json!({
        "report": report.to_json(),
        "row": {
            "alpha": ctx.fmt_element(row.alpha),
            "d_degree": row.d_degree,
            "delta_alpha": row.delta_alpha,
            "split_count": row.split_betas.len(),
            "first_split_beta": ctx.fmt_element(row.split_betas[0]),
        }
    }))
}

/// Split-quartic instance x^10+x^3 at n = 16: sweep verdict and the 8-split
/// row at the first passing direction.
fn split_witness_n16() -> Result<Value> {
    let ctx = FieldContext::new(16, None)?;
    let coeffs = x10_x3()?;
    let report = theorems::thm2_check(&ctx, &coeffs, None, None)?;
    let alpha = report.alpha_used.expect("sweep finds a direction");
    let row = ddt_row(&ctx, &coeffs.to_poly(), alpha)?;
    Ok(json!({
        "report": report.to_json(),
        "row": {
            "alpha": ctx.fmt_element(alpha),
            "d_degree": row.d_degree,
            "delta_alpha": row.delta_alpha,
            "split_count": row.split_betas.len(),
            "first_split_betas": row.split_betas.iter().take(3)
                .map(|&b| ctx.fmt_element(b))
                .collect::<Vec<_>>(),
        }
    }))
}

fn bundle() -> Result<Value> {
    Ok(json!({
        "klein_bis_f16": klein_bis_f16()?,
        "main_witness_n13": main_witness_n13()?,
        "split_witness_n16": split_witness_n16()?,
    }))
}

pub fn run(json_out: bool, print_actual: bool) -> Result<u8> {
    let actual = bundle()?;
    if print_actual {
        println!("{}", serde_json::to_string_pretty(&actual)?);
        return Ok(0);
    }
    let expected: Value = serde_json::from_str(EXPECTED).expect("stored baseline parses");
    let mut all_match = true;
    let mut entries = Vec::new();
    for name in SCENARIOS {
        let matches = actual[name] == expected[name];
        all_match &= matches;
        if json_out {
            entries.push(json!({"name": name, "match": matches}));
        } else if matches {
            println!("scenario {name}: match");
        } else {
            println!("scenario {name}: MISMATCH");
            eprintln!(
                "expected:\n{}\nactual:\n{}",
                serde_json::to_string_pretty(&expected[name])?,
                serde_json::to_string_pretty(&actual[name])?
            );
        }
    }
    if json_out {
        println!(
            "{}",
            serde_json::to_string(&json!({"scenarios": entries, "all_match": all_match}))?
        );
    }
    Ok(if all_match { 0 } else { 1 })
}
