//! Run-time bounds shared by the enumerators, samplers and the CLI.

/// Environment variable overriding [`Config::e_max`].
pub const EMAX_ENV: &str = "BIPOLAR_LAB_EMAX";

/// How streams of maps are written.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    /// One JSON array.
    Json,
    /// One JSON object per line.
    #[default]
    Ndjson,
    /// Graphviz, one graph per map.
    Dot,
}

impl std::str::FromStr for OutputFormat {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "ndjson" => Ok(OutputFormat::Ndjson),
            "dot" => Ok(OutputFormat::Dot),
            _ => Err(crate::Error::Parse(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest edge count the exhaustive enumerators accept.
    pub e_max: usize,
    /// Rejections allowed per growth step before a sampler gives up.
    pub rejection_cap: u64,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            e_max: 8,
            rejection_cap: 1_000_000,
            seed: 0,
            format: OutputFormat::Ndjson,
        }
    }
}

impl Config {
    /// Defaults, with `e_max` taken from the environment when set to a
    /// positive integer.
    pub fn from_env() -> Self {
        let mut c = Config::default();
        if let Some(v) = std::env::var(EMAX_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
        {
            c.e_max = v;
        }
        c
    }
}
