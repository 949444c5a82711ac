//! The `hecke-lab` command-line front end.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::field::Field;
use crate::arith::numfield::{FieldElement, FieldEmbedding, FieldLiteral, NumberField};
use crate::arith::rational::format_rational;
use crate::config::{Caps, OutputFormat, SessionConfig};
use crate::decomp::{base_change, base_change_algebra, commutant, end_restriction_check, is_irreducible, split_semisimple};
use crate::error::{Error, Result};
use crate::finite::construct::{check_maximal, construct_v, construct_w, maximal_left_ideals, IdealFile, LeftIdeal};
use crate::finite::hecke::hecke_constants;
use crate::finite::oracle::brute_force_constants;
use crate::finite::{build_hecke, counting_algebra, FiniteGroup, GroupFile, HaarMeasure, HeckeAlgebra, ModuleFile, Subgroup, SubgroupFile};
use crate::linalg::Matrix;
use crate::report::{algebraic_json, field_json, parse_json, poly_json, read_input, write_atomic, InputHash, Report};
use crate::satake::{
    base_change_table, canonical_point, classify, maximal_ideal_variety, regular_module_split, residue_field, CoordLiteral,
    DatumFile, Monomial, RootDatum, TorusPoint,
};

/// Environment variable holding cap overrides such as `q=16,field=48`.
pub const CAPS_ENV: &str = "HECKE_LAB_CAPS";

#[derive(Debug, Parser)]
#[command(name = "hecke-lab", version, about = "Exact computations with Hecke algebras and unramified classes")]
struct Cli {
    /// Session configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hecke algebras of a finite group relative to a subgroup.
    #[command(subcommand)]
    Finite(FiniteCmd),
    /// Split a representation after extending scalars.
    Decompose(DecomposeArgs),
    /// Unramified classes through the spherical algebra.
    #[command(subcommand)]
    Satake(SatakeCmd),
    /// Compare splitting counts from the torus side and the module side.
    Crosscheck(CrosscheckArgs),
}

#[derive(Debug, Subcommand)]
enum FiniteCmd {
    /// Double cosets and structure constants.
    Build(BuildArgs),
    /// The modules V(I, L) and W(I, L) for maximal left ideals I.
    ConstructV(ConstructArgs),
}

#[derive(Debug, Args)]
struct HeckeArgs {
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    subgroup: PathBuf,
    /// `Q` or a field file.
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[command(flatten)]
    hecke: HeckeArgs,
    /// Recompute the constants by convolving indicator functions.
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(flatten)]
    hecke: HeckeArgs,
    #[arg(long)]
    ideal: Vec<PathBuf>,
    /// One maximal left ideal per simple component.
    #[arg(long)]
    all_ideals: bool,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long)]
    module: PathBuf,
    /// Extension of the module's field; defaults to the field itself.
    #[arg(long)]
    ext: Option<String>,
    /// Report invariant dimensions of each summand under this subgroup.
    #[arg(long)]
    subgroup: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DatumArgs {
    #[arg(long)]
    datum: PathBuf,
    /// `Q` or a field file.
    #[arg(long, default_value = "Q")]
    base: String,
    /// Orbit-sum height for the spherical generators.
    #[arg(long)]
    height: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum SatakeCmd {
    /// Group points into isomorphism classes over the base field.
    Classify {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        points: PathBuf,
    },
    /// Points and residue degrees after extending the base field.
    BaseChange {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        ext: String,
    },
    /// Points of the torus where a character of the spherical algebra is evaluation.
    Variety {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        character: PathBuf,
    },
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    datum: DatumArgs,
    #[arg(long)]
    point: PathBuf,
    #[arg(long, required = true)]
    ext: Vec<String>,
}

/// One value of a spherical character: `label` names the orbit sum.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct CharacterValue {
    label: Monomial,
    value: CoordLiteral,
}

/// Parses and runs a command line; returns the process exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, echo_args(&args[1..])) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// The command line without the output destination, so a report does not
/// depend on where it is written.
fn echo_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--output" {
            skip = true;
        } else if !a.starts_with("--output=") {
            out.push(a.clone());
        }
    }
    out
}

struct Session {
    config: SessionConfig,
    inputs: Vec<InputHash>,
}

impl Session {
    fn caps(&self) -> Caps {
        self.config.caps()
    }

    fn height(&self, d: &DatumArgs) -> usize {
        d.height.unwrap_or(self.config.generator_height)
    }

    fn read<T: serde::de::DeserializeOwned>(&mut self, role: &str, path: &Path) -> Result<T> {
        let bytes = read_input(role, path, &mut self.inputs)?;
        parse_json(role, &bytes)
    }

    fn field(&mut self, role: &str, spec: &str) -> Result<NumberField> {
        if spec == "Q" {
            return Ok(NumberField::rationals());
        }
        let lit: FieldLiteral = self.read(role, Path::new(spec))?;
        NumberField::from_literal(&lit, self.config.q_factor_cap)
    }

    fn hecke(&mut self, a: &HeckeArgs) -> Result<HeckeAlgebra<NumberField>> {
        let gf: GroupFile = self.read("group", &a.group)?;
        let g = Arc::new(FiniteGroup::from_file(&gf, self.config.group_order_cap)?);
        let sf: SubgroupFile = self.read("subgroup", &a.subgroup)?;
        let l = sf.resolve(&g)?;
        let k = self.field("field", &a.field)?;
        Ok(build_hecke(g, &l, &HaarMeasure::normalized_on(&l), k))
    }

    fn datum(&mut self, d: &DatumArgs) -> Result<(RootDatum, NumberField)> {
        let f: DatumFile = self.read("datum", &d.datum)?;
        let r = RootDatum::from_file(&f, self.config.weyl_order_cap)?;
        let a = self.field("base", &d.base)?;
        Ok((r, a))
    }

    fn point(&mut self, path: &Path) -> Result<TorusPoint> {
        let lits: Vec<CoordLiteral> = self.read("point", path)?;
        TorusPoint::from_coord_literals(&lits, self.config.q_factor_cap)
    }
}

fn execute(cli: Cli, argv: Vec<String>) -> Result<()> {
    let mut session = Session { config: SessionConfig::default(), inputs: Vec::new() };
    if let Some(path) = &cli.config {
        session.config = session.read("config", path)?;
    }
    if let Ok(spec) = std::env::var(CAPS_ENV) {
        session.config.apply_overrides(&spec)?;
    }
    match cli.format {
        Some(Format::Json) => session.config.output_format = OutputFormat::Json,
        Some(Format::Table) => session.config.output_format = OutputFormat::Table,
        None => {}
    }
    session.config.validate()?;

    let (name, payload) = match &cli.command {
        Command::Finite(FiniteCmd::Build(a)) => ("finite build", cmd_finite_build(&mut session, a)?),
        Command::Finite(FiniteCmd::ConstructV(a)) => ("finite construct-v", cmd_construct_v(&mut session, a)?),
        Command::Decompose(a) => ("decompose", cmd_decompose(&mut session, a)?),
        Command::Satake(SatakeCmd::Classify { datum, points }) => ("satake classify", cmd_classify(&mut session, datum, points)?),
        Command::Satake(SatakeCmd::BaseChange { datum, point, ext }) => {
            ("satake base-change", cmd_base_change(&mut session, datum, point, ext)?)
        }
        Command::Satake(SatakeCmd::Variety { datum, character }) => ("satake variety", cmd_variety(&mut session, datum, character)?),
        Command::Crosscheck(a) => ("crosscheck", cmd_crosscheck(&mut session, a)?),
    };
    let Session { config, inputs } = session;
    let format = config.output_format;
    let report = Report::new(name, argv, payload, inputs, config);
    let text = match format {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Table => report.to_table(),
    };
    match &cli.output {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn elem_json(k: &NumberField, e: &FieldElement) -> Value {
    serde_json::to_value(k.elem_literal(e)).expect("literals serialize")
}

fn vector_json(k: &NumberField, v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(|e| elem_json(k, e)).collect())
}

fn matrix_json(k: &NumberField, m: &Matrix<FieldElement>) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vector_json(k, r)).collect())
}

fn point_json(x: &TorusPoint) -> Value {
    Value::Array(x.coords.iter().map(algebraic_json).collect())
}

fn labels(g: &FiniteGroup, elems: &[usize]) -> Value {
    json!(elems.iter().map(|&a| g.label(a)).collect::<Vec<_>>())
}

fn subgroup_json(g: &FiniteGroup, l: &Subgroup) -> Value {
    json!({ "order": l.order(), "elements": labels(g, l.elements()) })
}

fn cmd_finite_build(s: &mut Session, a: &BuildArgs) -> Result<Value> {
    let h = s.hecke(&a.hecke)?;
    let g = &h.group;
    let dc = &h.basis;
    let constants = hecke_constants(g, dc, &h.measure);
    let oracle = if a.oracle {
        if brute_force_constants(g, dc, &h.measure)? != constants {
            return Err(Error::Mismatch("structure constants disagree with brute-force convolution".into()));
        }
        json!("agrees")
    } else {
        Value::Null
    };
    let cosets: Vec<Value> = (0..dc.len())
        .map(|i| {
            json!({
                "index": i,
                "rep": g.label(dc.reps[i]),
                "size": dc.members[i].len(),
                "left_cosets": dc.left_cosets[i].len(),
            })
        })
        .collect();
    let mut table = Vec::new();
    for (i, row) in constants.iter().enumerate() {
        for (j, terms) in row.iter().enumerate() {
            for (k, c) in terms {
                table.push(json!({ "i": i, "j": j, "k": k, "c": format_rational(c) }));
            }
        }
    }
    Ok(json!({
        "group": { "order": g.order(), "generators": labels(g, g.generators()) },
        "subgroup": subgroup_json(g, h.subgroup()),
        "field": field_json(h.field()),
        "point_mass": format_rational(&h.measure.point_mass),
        "dim": h.dim(),
        "commutative": h.rational.is_commutative(),
        "epsilon_index": dc.index_of[0],
        "double_cosets": cosets,
        "structure_constants": table,
        "oracle": oracle,
    }))
}

fn cmd_construct_v(s: &mut Session, a: &ConstructArgs) -> Result<Value> {
    if a.ideal.is_empty() && !a.all_ideals {
        return Err(Error::Malformed("give --ideal files or --all-ideals".into()));
    }
    let h = s.hecke(&a.hecke)?;
    let caps = s.caps();
    let k = h.field().clone();
    let mut ideals: Vec<(String, LeftIdeal<NumberField>)> = Vec::new();
    for path in &a.ideal {
        let f: IdealFile = s.read("ideal", path)?;
        let i = LeftIdeal::new(&h.algebra, &f.parse(&k)?)?;
        check_maximal(&h.algebra, &i, caps)?;
        ideals.push((path.display().to_string(), i));
    }
    if a.all_ideals {
        for (n, i) in maximal_left_ideals(&h.algebra, caps)?.into_iter().enumerate() {
            ideals.push((format!("component {n}"), i));
        }
    }
    let g = h.group.clone();
    let mut rows = Vec::new();
    for (source, i) in &ideals {
        let v = construct_v(&h, i, caps)?;
        let w = construct_w(&h, i, &v, caps)?;
        let end = end_restriction_check(&v.module, &h)?;
        let action: Vec<Value> = g
            .generators()
            .iter()
            .map(|&x| json!({ "element": g.label(x), "matrix": matrix_json(&k, &v.module.rho[x]) }))
            .collect();
        rows.push(json!({
            "source": source,
            "ideal_dim": i.dim(),
            "ideal_basis": i.basis.iter().map(|b| vector_json(&k, b)).collect::<Vec<_>>(),
            "v": {
                "dim": v.module.dim,
                "invariants_dim": v.invariants.len(),
                "irreducible": v.checks.irreducible,
                "epsilon_kernel_is_ideal": v.checks.epsilon_kernel_is_ideal,
                "intertwiner_kernel_is_ideal": v.checks.intertwiner_kernel_is_ideal,
                "intertwiner_onto_invariants": v.checks.intertwiner_onto_invariants,
                "intertwiner_equivariant": v.checks.intertwiner_equivariant,
                "generator_action": action,
            },
            "w": {
                "dim": w.checks.dim_w,
                "max_submodule_dim": w.checks.dim_max_submodule,
                "head_is_v": w.checks.head_is_v,
                "invariants_iso": w.checks.invariants_iso,
            },
            "end_restriction": {
                "end_group_dim": end.end_group_dim,
                "end_hecke_dim": end.end_hecke_dim,
                "bijective": end.bijective(),
            },
        }));
    }
    Ok(json!({
        "group_order": g.order(),
        "subgroup": subgroup_json(&g, h.subgroup()),
        "field": field_json(&k),
        "hecke_dim": h.dim(),
        "ideals": rows,
    }))
}

fn cmd_decompose(s: &mut Session, a: &DecomposeArgs) -> Result<Value> {
    let caps = s.caps();
    let mf: ModuleFile = s.read("module", &a.module)?;
    let m = mf.load(s.config.group_order_cap, s.config.q_factor_cap)?;
    let base = m.field.clone();
    let ext = match &a.ext {
        Some(spec) => s.field("ext", spec)?,
        None => base.clone(),
    };
    let l = match &a.subgroup {
        Some(path) => Some(s.read::<SubgroupFile>("subgroup", path)?.resolve(&m.group)?),
        None => None,
    };
    let alg = counting_algebra(&m.group, base.clone());
    let m_a = m.as_module(&alg);
    let emb = FieldEmbedding::new(&base, &ext, caps.field)?;
    let m_b = base_change(&m_a, &base_change_algebra(&alg, &emb)?, &emb)?;
    let dec = split_semisimple(&m_b, caps)?;
    let irreducible = is_irreducible(&m_a, caps)?.irreducible;
    let summands: Vec<Value> = dec
        .summands
        .iter()
        .enumerate()
        .map(|(n, sm)| {
            let mut row = json!({
                "index": n,
                "dim": sm.module.dim,
                "commutant_dim": sm.commutant_dim,
                "class": dec.classes[n],
            });
            if let Some(l) = &l {
                let k = sm.module.field();
                let avg = l
                    .elements()
                    .iter()
                    .fold(Matrix::zeros(k, sm.module.dim, sm.module.dim), |acc, &x| acc.add(k, &sm.module.action[x]));
                row["invariants_dim"] = json!(avg.rank(k));
            }
            row
        })
        .collect();
    Ok(json!({
        "group_order": m.group.order(),
        "field": field_json(&base),
        "extension": field_json(&ext),
        "module_dim": m.dim,
        "irreducible_over_field": irreducible,
        "commutant_dim": commutant(&m_a).len(),
        "t": dec.t(),
        "summands": summands,
        "multiplicities": dec.multiplicities,
        "isomorphic": dec.iso,
        "reassembles": dec.reassembles(&m_b),
        "subgroup": l.as_ref().map(|l| subgroup_json(&m.group, l)),
    }))
}

fn datum_json(r: &RootDatum) -> Value {
    json!({
        "rank": r.rank,
        "preset": r.preset,
        "weyl_order": r.weyl_order(),
        "simply_connected": r.simply_connected,
        "q": r.q,
    })
}

fn cmd_classify(s: &mut Session, d: &DatumArgs, points: &Path) -> Result<Value> {
    let (r, a) = s.datum(d)?;
    let lits: Vec<Vec<CoordLiteral>> = s.read("points", points)?;
    let pts = lits
        .iter()
        .map(|p| TorusPoint::from_coord_literals(p, s.config.q_factor_cap))
        .collect::<Result<Vec<_>>>()?;
    let classes = classify(&r, &a, &pts, s.height(d), s.caps())?;
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "key": point_json(&c.point),
                "members": c.members,
                "residue_minpoly": poly_json(c.residue.field.modulus()),
                "residue_degree": c.residue.degree,
                "t": c.t,
                "absolutely_irreducible": c.absolutely_irreducible,
                "evaluations_in_base": c.evaluations_in_base,
                "galois_orbit": c.galois_orbit.iter().map(point_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "datum": datum_json(&r),
        "base": field_json(&a),
        "points": pts.len(),
        "classes": rows,
    }))
}

fn cmd_base_change(s: &mut Session, d: &DatumArgs, point: &Path, ext: &str) -> Result<Value> {
    let (r, a) = s.datum(d)?;
    let x = s.point(point)?;
    let b = s.field("ext", ext)?;
    let caps = s.caps();
    let table = base_change_table(&r, &a, &b, &x, s.height(d), caps)?;
    let key = canonical_point(&r, &x, caps)?;
    let includes_x = table.points.iter().any(|p| canonical_point(&r, p, caps).map(|c| c == key).unwrap_or(false));
    Ok(json!({
        "datum": datum_json(&r),
        "base": field_json(&a),
        "extension": field_json(&b),
        "point": point_json(&x),
        "t": table.t,
        "points": table.points.iter().map(point_json).collect::<Vec<_>>(),
        "residue_degrees": table.residue_degrees,
        "equivalent": table.equivalent,
        "pairwise_inequivalent": table.pairwise_inequivalent(),
        "includes_point": includes_x,
        "tensor_degrees": table.tensor_degrees,
    }))
}

fn cmd_variety(s: &mut Session, d: &DatumArgs, character: &Path) -> Result<Value> {
    let (r, a) = s.datum(d)?;
    let values: Vec<CharacterValue> = s.read("character", character)?;
    let chi = values
        .iter()
        .map(|v| Ok((v.label.clone(), v.value.parse(s.config.q_factor_cap)?)))
        .collect::<Result<Vec<_>>>()?;
    let var = maximal_ideal_variety(&r, &a, &chi, s.height(d), s.caps())?;
    Ok(json!({
        "datum": datum_json(&r),
        "base": field_json(&a),
        "point": point_json(&var.point),
        "points": var.points.iter().map(point_json).collect::<Vec<_>>(),
        "residue_degree": var.residue_degree,
    }))
}

fn cmd_crosscheck(s: &mut Session, c: &CrosscheckArgs) -> Result<Value> {
    let (r, a) = s.datum(&c.datum)?;
    let x = s.point(&c.point)?;
    let caps = s.caps();
    let height = s.height(&c.datum);
    let residue = residue_field(&r, &a, &x, height, caps)?;
    let mut rows = Vec::new();
    for spec in &c.ext {
        let b = s.field("ext", spec)?;
        let torus_t = base_change_table(&r, &a, &b, &x, height, caps)?.t;
        let module_t = regular_module_split(&residue.field, &a, &b, caps)?.t();
        if torus_t != module_t {
            return Err(Error::Mismatch(format!(
                "over {}: torus side gives t = {torus_t}, module side gives t = {module_t}",
                b.label()
            )));
        }
        rows.push(json!({ "extension": b.label(), "degree": b.degree(), "torus_t": torus_t, "module_t": module_t }));
    }
    Ok(json!({
        "datum": datum_json(&r),
        "base": field_json(&a),
        "point": point_json(&x),
        "residue_minpoly": poly_json(residue.field.modulus()),
        "residue_degree": residue.degree,
        "checks": rows,
    }))
}
