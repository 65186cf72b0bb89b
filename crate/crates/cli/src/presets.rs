//! Built-in run configurations, embedded at compile time.

use crate::CliError;

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub toml: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig2-left-dirichlet",
        summary: "single slit, long time, Dirichlet screen, exact",
        toml: include_str!("../presets/fig2-left-dirichlet.toml"),
    },
    Preset {
        name: "fig2-left-neumann",
        summary: "single slit, long time, Neumann screen, exact",
        toml: include_str!("../presets/fig2-left-neumann.toml"),
    },
    Preset {
        name: "fig2-right-dirichlet",
        summary: "single slit, short time (mu ~ 8e2), Dirichlet screen, exact",
        toml: include_str!("../presets/fig2-right-dirichlet.toml"),
    },
    Preset {
        name: "fig3-left-free",
        summary: "wide separation, long time, truncation approximation",
        toml: include_str!("../presets/fig3-left-free.toml"),
    },
    Preset {
        name: "fig3-middle-free",
        summary: "wide separation, mu ~ 5e4 (q ~ 6e-2), truncation approximation",
        toml: include_str!("../presets/fig3-middle-free.toml"),
    },
    Preset {
        name: "fig3-right-free",
        summary: "wide separation, mu ~ 5e5, truncation approximation",
        toml: include_str!("../presets/fig3-right-free.toml"),
    },
    Preset {
        name: "fig4-double-free",
        summary: "disjoint double slit, truncation approximation",
        toml: include_str!("../presets/fig4-double-free.toml"),
    },
    Preset {
        name: "fig4-double-literal",
        summary: "overlapping double slit (flagged), truncation approximation",
        toml: include_str!("../presets/fig4-double-literal.toml"),
    },
    Preset {
        name: "gravity-neon",
        summary: "neon free fall through a slit in Earth gravity, stationary phase",
        toml: include_str!("../presets/gravity-neon.toml"),
    },
];

pub fn find(name: &str) -> Result<&'static Preset, CliError> {
    PRESETS.iter().find(|p| p.name == name).ok_or_else(|| {
        CliError::Validation(format!(
            "unknown preset '{name}'; run `slitprop presets --list` for the available names"
        ))
    })
}
