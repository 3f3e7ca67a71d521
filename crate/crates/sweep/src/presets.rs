use crate::config::{Method, SweepConfig, VxGrid};
use crate::error::{Result, SweepError};

pub const PRESETS: [&str; 5] = ["fig1", "fig3", "fig4", "fig5", "fig6"];

const FIGURE_OMEGA: usize = 50;
const FIGURE_GRID: VxGrid = VxGrid {
    min: 0.0,
    max: 3.0,
    steps: 300,
};

/// Configuration that regenerates the data behind one published figure.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    let (chi_list, methods) = match name {
        "fig1" => (vec![-0.5, 0.5, 1.0], vec![Method::Exact]),
        "fig3" => (vec![1.0], vec![Method::Kstates]),
        "fig4" => (vec![0.5, 1.0], vec![Method::Exact, Method::Mf, Method::Pmf]),
        "fig5" => (vec![0.0, 0.5], vec![Method::Exact, Method::Pmfv]),
        "fig6" => (
            vec![0.0, 0.5],
            vec![Method::Exact, Method::Rpa, Method::Prpa],
        ),
        other => return Err(SweepError::UnknownPreset(other.to_string())),
    };
    Ok(SweepConfig {
        omega: FIGURE_OMEGA,
        eps: 1.0,
        chi_list,
        vx_grid: FIGURE_GRID,
        methods,
        ..SweepConfig::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid() {
        for name in PRESETS {
            figure_preset(name).unwrap().validate().unwrap();
        }
        assert_eq!(
            figure_preset("fig3").unwrap().methods,
            vec![Method::Kstates]
        );
        assert_eq!(
            figure_preset("fig6").unwrap().methods,
            vec![Method::Exact, Method::Rpa, Method::Prpa]
        );
        assert!(matches!(
            figure_preset("fig2"),
            Err(SweepError::UnknownPreset(_))
        ));
    }
}
