//! Flag parsing shared by all subcommands.

/// How sigma should be obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMode {
    Auto,
    External(i64),
}

#[derive(Debug, Clone)]
pub struct Options {
    pub json: bool,
    pub dump: Option<String>,
    pub sigma: SigmaMode,
    pub threads: usize,
    pub huge: bool,
    pub seed: u64,
    pub max_index: usize,
    pub column: usize,
    pub unorientable: bool,
    pub oriented: bool,
    pub crossing: bool,
    pub quick: bool,
    pub paper: bool,
    pub cobordism: Option<String>,
    pub random: Option<usize>,
    pub positional: Vec<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            json: false,
            dump: None,
            sigma: SigmaMode::Auto,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(8),
            huge: false,
            seed: 7,
            max_index: ugrid_core::complex::DEFAULT_INDEX_LIMIT,
            column: 0,
            unorientable: false,
            oriented: false,
            crossing: false,
            quick: false,
            paper: false,
            cobordism: None,
            random: None,
            positional: Vec::new(),
        }
    }
}

pub fn parse(args: &[String]) -> Result<Options, String> {
    let mut opts = Options::default();
    let mut it = args.iter().peekable();
    let value = |it: &mut std::iter::Peekable<std::slice::Iter<String>>,
                     flag: &str|
     -> Result<String, String> {
        it.next().cloned().ok_or_else(|| format!("flag {flag} needs a value"))
    };
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => opts.json = true,
            "--huge" => opts.huge = true,
            "--quick" => opts.quick = true,
            "--paper" => opts.paper = true,
            "--unorientable" => opts.unorientable = true,
            "--oriented" => opts.oriented = true,
            "--crossing" => opts.crossing = true,
            "--dump" => opts.dump = Some(value(&mut it, arg)?),
            "--cobordism" => opts.cobordism = Some(value(&mut it, arg)?),
            "--sigma" => {
                let v = value(&mut it, arg)?;
                opts.sigma = if v == "auto" {
                    SigmaMode::Auto
                } else if let Some(rest) = v.strip_prefix("external:") {
                    SigmaMode::External(
                        rest.parse().map_err(|_| format!("bad sigma value `{rest}`"))?,
                    )
                } else {
                    return Err(format!("--sigma takes `auto` or `external:<int>`, got `{v}`"));
                };
            }
            "--threads" => {
                opts.threads = value(&mut it, arg)?
                    .parse()
                    .map_err(|_| "--threads takes a positive integer".to_string())?;
                if opts.threads == 0 {
                    return Err("--threads takes a positive integer".into());
                }
            }
            "--seed" => {
                opts.seed =
                    value(&mut it, arg)?.parse().map_err(|_| "--seed takes an integer".to_string())?;
            }
            "--max-index" => {
                opts.max_index = value(&mut it, arg)?
                    .parse()
                    .map_err(|_| "--max-index takes an integer".to_string())?;
            }
            "--col" => {
                opts.column = value(&mut it, arg)?
                    .parse()
                    .map_err(|_| "--col takes a column index".to_string())?;
            }
            "--random" => {
                opts.random = Some(
                    value(&mut it, arg)?
                        .parse()
                        .map_err(|_| "--random takes a count".to_string())?,
                );
            }
            other if other.starts_with("--") => return Err(format!("unknown flag `{other}`")),
            _ => opts.positional.push(arg.clone()),
        }
    }
    Ok(opts)
}
