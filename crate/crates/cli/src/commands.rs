use std::fs;

use toric_syzygy::asymptotics::{density_report, AsymptoticsError, DensityOptions};
use toric_syzygy::cap::{CapBody, CapError, TauEstimate, TauFlag};
use toric_syzygy::geometry::rational::{format_exact, parse};
use toric_syzygy::geometry::{builtin, parse_polytope, GeometryError, Point, Polytope, BUILTIN_NAMES};
use toric_syzygy::koszul::rank::PrimeField;
use toric_syzygy::koszul::{
    check_block_limit, kpq_weights_in, RankMode, SyzygyError, SyzygyOptions, ToricEmbedding,
};
use toric_syzygy::output;

use crate::{Cli, Command, DensityArgs, Global, RegionArgs, ShapesArgs, SyzygyArgs, TauArgs};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn resource(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<SyzygyError> for Failure {
    fn from(e: SyzygyError) -> Self {
        match e {
            SyzygyError::BlockTooLarge { .. } => Failure::resource(e.to_string()),
            SyzygyError::PrimeUnlucky { .. } => Failure::runtime(e.to_string()),
            _ => Failure::config(e.to_string()),
        }
    }
}

impl From<CapError> for Failure {
    fn from(e: CapError) -> Self {
        Failure::config(e.to_string())
    }
}

impl From<AsymptoticsError> for Failure {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::Syzygy(s) => s.into(),
            AsymptoticsError::LimitExceeded { .. } => Failure::resource(e.to_string()),
            _ => Failure::config(e.to_string()),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

pub fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    if g.svg && g.out.is_none() {
        return Err(Failure::config("--svg needs --out (the SVG is written next to it)"));
    }
    let (polytope, source) = load_polytope(g)?;
    match &cli.command {
        Command::Syzygy(a) => syzygy(g, &polytope, &source, a),
        Command::Region(a) => region(g, &polytope, &source, a),
        Command::Tau(a) => tau(g, &polytope, &source, a),
        Command::Density(a) => density(g, &polytope, &source, a),
        Command::Shapes(a) => shapes(g, &polytope, &source, a),
    }
}

fn load_polytope(g: &Global) -> Result<(Polytope, String)> {
    let Some(name) = &g.polytope else {
        return Err(Failure::config(format!("--polytope is required (a file or one of {})", BUILTIN_NAMES.join(", "))));
    };
    if BUILTIN_NAMES.contains(&name.as_str()) {
        return Ok((builtin(name)?, name.clone()));
    }
    let text = fs::read_to_string(name).map_err(|e| Failure::config(format!("cannot read polytope {name}: {e}")))?;
    Ok((parse_polytope(&text)?, name.clone()))
}

fn rank_options(g: &Global, checked: bool) -> Result<SyzygyOptions> {
    if !g.exact && PrimeField::new(g.prime).is_none() {
        return Err(Failure::config(format!("--prime {} is not a prime below 2^32", g.prime)));
    }
    if g.exact && checked {
        return Err(Failure::config("--exact and --checked are exclusive"));
    }
    let mode = match (g.exact, checked) {
        (true, _) => RankMode::ExactRational,
        (false, true) => RankMode::Checked(g.prime),
        (false, false) => RankMode::PrimeField(g.prime),
    };
    Ok(SyzygyOptions { mode, block_limit: g.block_limit })
}

fn mode_name(mode: RankMode) -> String {
    match mode {
        RankMode::PrimeField(p) => format!("prime field F_{p}"),
        RankMode::ExactRational => "exact rational".into(),
        RankMode::Checked(p) => format!("checked (F_{p} and rational)"),
    }
}

fn header(command: &str, source: &str, g: &Global, extra: Vec<(&str, String)>) -> String {
    let mut pairs = vec![("command".to_string(), command.to_string()), ("polytope".into(), source.to_string())];
    pairs.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v)));
    pairs.push(("seed".into(), g.seed.to_string()));
    output::comment_header(&pairs)
}

fn emit(g: &Global, text: &str) -> Result<()> {
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_svg(g: &Global, svg: Option<String>) -> Result<()> {
    if !g.svg {
        return Ok(());
    }
    let path = g.out.as_ref().expect("checked in run").with_extension("svg");
    match svg {
        Some(text) => fs::write(&path, text).map_err(|e| Failure::runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            eprintln!("note: SVG output is only produced for planar polytopes");
            Ok(())
        }
    }
}

fn parse_point(text: &str, dim: usize) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|c| parse(c.trim()))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Failure::config(format!("bad point {text:?}: {e}")))?;
    if coords.len() != dim {
        return Err(Failure::config(format!("point {text:?} has {} coordinates, Δ has dimension {dim}", coords.len())));
    }
    Ok(Point(coords))
}

fn syzygy(g: &Global, polytope: &Polytope, source: &str, a: &SyzygyArgs) -> Result<()> {
    let opts = rank_options(g, a.checked)?;
    if a.q > polytope.dim() {
        return Err(Failure::config(format!("q = {} exceeds the dimension {}", a.q, polytope.dim())));
    }
    let emb = ToricEmbedding::new(polytope, a.d)?;
    let r = emb.projective_dimension();
    let p_max = a.p_max.unwrap_or(r);
    if a.p_min > p_max || p_max > r {
        return Err(Failure::config(format!("p range {}..={} must lie in 0..={r} (r_d)", a.p_min, p_max)));
    }
    for p in a.p_min..=p_max {
        check_block_limit(&emb, p, a.q, opts.block_limit)?;
    }
    let clouds = (a.p_min..=p_max)
        .map(|p| kpq_weights_in(&emb, p, a.q, &opts))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let head = header(
        "syzygy",
        source,
        g,
        vec![
            ("d", a.d.to_string()),
            ("q", a.q.to_string()),
            ("p_range", format!("{}..={} (r_d = {r})", a.p_min, p_max)),
            ("rank_mode", mode_name(opts.mode)),
            ("block_limit", opts.block_limit.to_string()),
            (
                "total_dimensions",
                clouds.iter().map(|c| format!("K_{},{}={}", c.p, c.q, c.total_dimension())).collect::<Vec<_>>().join(" "),
            ),
        ],
    );
    emit(g, &output::cloud_csv(&head, &clouds))?;
    let points: Vec<Vec<f64>> =
        clouds.iter().flat_map(|c| c.normalized()).map(|(x, _)| x.to_f64()).collect();
    let title = format!("normalized weights of K_p,{} for d = {}", a.q, a.d);
    emit_svg(g, output::scatter_svg(polytope, &points, &title))
}

fn region(g: &Global, polytope: &Polytope, source: &str, a: &RegionArgs) -> Result<()> {
    if !(0.0..=1.0).contains(&a.a) {
        return Err(Failure::config(format!("--a {} is outside [0, 1]", a.a)));
    }
    if a.directions < 4 || !(a.tol > 0.0) {
        return Err(Failure::config("need --directions >= 4 and --tol > 0"));
    }
    let body = CapBody::new(polytope)?;
    let boundary = body.region_boundary(a.a, a.directions, a.tol)?;
    let head = header(
        "region",
        source,
        g,
        vec![("a", a.a.to_string()), ("directions", a.directions.to_string()), ("tol", a.tol.to_string())],
    );
    emit(g, &output::region_csv(&head, &boundary))?;
    emit_svg(g, output::region_svg(polytope, &boundary, &format!("region a = {}", a.a)))
}

fn flag_name(flag: Option<TauFlag>) -> &'static str {
    match flag {
        None => "",
        Some(TauFlag::OutsideBody) => "outside",
        Some(TauFlag::Infeasible) => "infeasible",
    }
}

fn tau(g: &Global, polytope: &Polytope, source: &str, a: &TauArgs) -> Result<()> {
    let x = parse_point(&a.x, polytope.dim())?;
    if !polytope.contains(&x)? {
        return Err(Failure::config(format!("x = {} is outside Δ", a.x)));
    }
    if a.directions < 4 || a.grid < 4 || !(a.tol > 0.0) {
        return Err(Failure::config("need --directions >= 4, --grid >= 4 and --tol > 0"));
    }
    let body = CapBody::new(polytope)?;
    let sweep = body.tau_direction_sweep(&x, a.directions, a.tol)?;
    let lp = body.tau_grid_lp(&x, a.grid)?;
    let coords: Vec<String> = x.0.iter().map(format_exact).collect();
    println!("x = ({})", coords.join(", "));
    let show = |name: &str, unit: &str, t: &TauEstimate| {
        let flag = flag_name(t.flag);
        let flag = if flag.is_empty() { String::new() } else { format!(" [{flag}]") };
        println!(
            "{name}: tau/vol = {:.6} +- {:.2e} ({} {unit}){flag}",
            t.tau_over_vol, t.error_bound, t.resolution
        );
    };
    show("direction sweep", "directions", &sweep);
    show("grid lp", "grid", &lp);
    if g.out.is_some() {
        let head = header(
            "tau",
            source,
            g,
            vec![
                ("x", coords.join(",")),
                ("directions", a.directions.to_string()),
                ("tol", a.tol.to_string()),
                ("grid", a.grid.to_string()),
            ],
        );
        let mut text = head + "method,resolution,tau_over_vol,error_bound,flag\n";
        for (name, t) in [("direction_sweep", &sweep), ("grid_lp", &lp)] {
            text += &format!(
                "{name},{},{:.12},{:.12},{}\n",
                t.resolution,
                t.tau_over_vol,
                t.error_bound,
                flag_name(t.flag)
            );
        }
        emit(g, &text)?;
    }
    Ok(())
}

fn density(g: &Global, polytope: &Polytope, source: &str, a: &DensityArgs) -> Result<()> {
    let syzygy = rank_options(g, false)?;
    if a.d_max == 0 {
        return Err(Failure::config("--d-max must be positive"));
    }
    if a.q > polytope.dim() {
        return Err(Failure::config(format!("q = {} exceeds the dimension {}", a.q, polytope.dim())));
    }
    let opts = DensityOptions { syzygy, p_max: a.p_max };
    let report = density_report(polytope, a.q, a.d_max, a.samples, g.seed, &opts)?;
    let p_range = match a.p_max {
        Some(cap) => format!("1..=min(r_d, {cap}){}", if report.restricted { " (restricted)" } else { "" }),
        None => "1..=r_d".into(),
    };
    let head = header(
        "density",
        source,
        g,
        vec![
            ("q", a.q.to_string()),
            ("d_max", a.d_max.to_string()),
            ("p_range", p_range),
            ("samples", a.samples.to_string()),
            ("rank_mode", mode_name(syzygy.mode)),
            ("block_limit", syzygy.block_limit.to_string()),
        ],
    );
    emit(g, &output::density_csv(&head, &report, polytope.dim()))?;
    let points: Vec<Vec<f64>> = report.weights.iter().map(|w| w.coords.clone()).collect();
    let title = format!("normalized weights, q = {}, d <= {}", a.q, a.d_max);
    emit_svg(g, output::scatter_svg(polytope, &points, &title))
}

fn shapes(g: &Global, polytope: &Polytope, source: &str, a: &ShapesArgs) -> Result<()> {
    let x = parse_point(&a.x, polytope.dim())?;
    if !polytope.contains(&x)? {
        return Err(Failure::config(format!("x = {} is outside Δ", a.x)));
    }
    let volume = parse(a.volume.trim()).map_err(|e| Failure::config(format!("bad volume {:?}: {e}", a.volume)))?;
    let shape = CapBody::new(polytope)?.shape_for(&x, &volume, a.grid)?;
    let head = header(
        "shapes",
        source,
        g,
        vec![
            ("x", x.0.iter().map(format_exact).collect::<Vec<_>>().join(",")),
            ("target_volume", format_exact(&volume)),
            ("grid", a.grid.to_string()),
        ],
    );
    emit(g, &output::shape_csv(&head, &shape))?;
    let centers: Vec<Vec<f64>> = shape.cubes.iter().map(|c| c.center.to_f64()).collect();
    emit_svg(g, output::scatter_svg(polytope, &centers, "cube centers"))
}
