//! `validate`: compare the expanded loss against quadrature of the exact
//! batch-mean density, and fit how the gap scales with batch size.

use semihard_core::edgeworth::{loss_expansion, margin_sensitivity, semi_hard_probability};
use semihard_core::oracle::error_scaling_fit;

use crate::args::ValidateArgs;
use crate::commands::{
    build_family, check_batch_sizes, check_positive, loss_by_quadrature, tool_line, write_output,
};
use crate::error::Result;
use crate::report::{SweepReport, SweepRow};
use crate::settings::Settings;

pub fn run(settings: &Settings, args: &ValidateArgs) -> Result<()> {
    let report = build_report(settings, args)?;
    write_output(args.output.as_ref(), &report.render(args.format))
}

pub fn build_report(settings: &Settings, args: &ValidateArgs) -> Result<SweepReport> {
    check_positive("alpha", args.alpha)?;
    check_batch_sizes(&args.batch_sizes)?;
    let family = build_family(&args.family)?;
    let alpha = args.alpha;

    let mut rows = Vec::with_capacity(args.batch_sizes.len());
    let mut points = Vec::with_capacity(args.batch_sizes.len());
    for &n in &args.batch_sizes {
        let law = family.batch_mean_law(n)?;
        let model = family.expansion_model(n, settings.convention)?;
        let terms = loss_expansion(&model, alpha)?;
        let oracle = loss_by_quadrature(&law, alpha, settings.tol)?;
        let abs_error = (terms.total - oracle).abs();
        points.push((n, abs_error));
        rows.push(SweepRow {
            alpha,
            n_eff: n,
            leading: terms.leading,
            correction: terms.correction,
            total: terms.total,
            p_sh: semi_hard_probability(&model, alpha)?,
            sensitivity: margin_sensitivity(&model, alpha)?,
            oracle_value: Some(oracle),
            abs_error: Some(abs_error),
        });
    }

    let mut metadata = vec![
        ("tool".into(), tool_line()),
        ("command".into(), "validate".into()),
        ("family".into(), family.to_string()),
        ("alpha".into(), alpha.to_string()),
        ("convention".into(), settings.convention_name().into()),
        ("tol".into(), settings.tol.to_string()),
    ];
    match error_scaling_fit(&points) {
        Ok(fit) => {
            metadata.push(("scaling_slope".into(), fit.slope.to_string()));
            metadata.push(("scaling_r_squared".into(), fit.r_squared.to_string()));
            metadata.push(("scaling_amplitude".into(), fit.amplitude().to_string()));
        }
        Err(err) => {
            metadata.push(("scaling_fit".into(), format!("unavailable: {err}")));
        }
    }
    SweepReport::new(metadata, rows)
}
