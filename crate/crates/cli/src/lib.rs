//! `ttk` command line: argument parsing, file ingestion and report emission.

pub mod report;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ttk_borel::{functions_from_csv, functions_to_csv, indistinguishable_pairs, is_borel_smith, is_effective, BorelError, Constraints};
use ttk_chartable::{dixon_character_table, real_dimension_functions, table_to_csv, CharTableError};
use ttk_complex::{
    builder_dihedral, builder_periodic, builder_sphere, builder_u, complex_from_json, complex_to_json, h_marks_to_csv,
    minimize, realize_basis, via_quotient, ComplexError, GroupCtx, OrbitComplex, RealizedElement,
};
use ttk_group::{catalog, parse_group_file, Group, Subgroup, SubgroupClassTable, SuperclassFunction, DEFAULT_ORDER_BOUND};
use ttk_spectrum::{comp_membership, separation_witness, u_membership_matrix, Coverage, SpectrumError};
use ttk_twisted::{Twist, TwistedElement, TwistedError, TwistedRing};

use crate::report::*;

#[derive(Parser, Debug)]
#[command(name = "ttk", about = "Permutation complexes, endotrivials and twisted cohomology of p-groups")]
struct Cli {
    /// catalog name (C4, E2r3, D16, Q8, SG32_43, ...) or a group file
    #[arg(long, global = true)]
    group: Option<String>,
    /// must equal the prime dividing the group order
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// input file for the subcommand
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_shift: u32,
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    max_twist: u32,
    /// length bound for periodic builders and Weyl-group resolutions
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    truncate: u32,
    /// extra complexes (JSON) offered to basis realization
    #[arg(long = "with", global = true)]
    with: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// subgroup classes
    Subgroups,
    Chartable,
    /// real dimension functions
    Bsbasis,
    /// check a file of superclass functions
    Bscheck { functions: PathBuf },
    /// class pairs that no Borel–Smith function separates
    Indist,
    Complex {
        #[command(subcommand)]
        action: ComplexCmd,
    },
    Twisted {
        #[command(subcommand)]
        action: TwistedCmd,
    },
    Spectrum {
        #[command(subcommand)]
        action: SpectrumCmd,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BuildKind {
    Unit,
    U,
    Dihedral,
    Periodic,
    Sphere,
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    Build {
        #[arg(long, value_enum)]
        kind: BuildKind,
        /// normal subgroup (u, and quotients for dihedral/periodic) or L for spheres
        #[arg(long)]
        sub: Option<String>,
        /// index-2 kernel inside L for spheres
        #[arg(long)]
        kernel: Option<String>,
    },
    Validate,
    Hmarks,
    Minimize,
    Iota {
        #[arg(long)]
        sub: String,
    },
}

#[derive(Subcommand, Debug)]
enum TwistedCmd {
    Dims,
    /// basis of one component
    Basis {
        #[arg(long)]
        twist: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: i32,
    },
    Multiply {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long, default_value_t = 0)]
        left_index: usize,
        #[arg(long, default_value_t = 0)]
        right_index: usize,
    },
    Psihat {
        #[arg(long)]
        sub: String,
    },
}

#[derive(Subcommand, Debug)]
enum SpectrumCmd {
    Umatrix {
        /// allow unrealized basis elements
        #[arg(long)]
        partial: bool,
    },
    Witness {
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    Compmember {
        #[arg(long)]
        sub: String,
    },
}

/// Parse argv, run, and map failures to exit codes: 2 for bad input, 3 for
/// a failed mathematical guard.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn complex_code(e: &ComplexError) -> i32 {
    use ComplexError::*;
    match e {
        NotEndotrivial { .. } | NotEndotrivialAt { .. } | NonConstantHMark { .. } | NoQualifyingSummand { .. } | AmbiguousIota { .. }
        | HMarkMismatch(_) | EquivalenceFailure(_) | PivotInversionFailure { .. } => 3,
        _ => 2,
    }
}

fn twisted_code(e: &TwistedError) -> i32 {
    match e {
        TwistedError::Complex(c) => complex_code(c),
        TwistedError::TwistLength { .. } => 2,
        _ => 3,
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(c) = cause.downcast_ref::<ComplexError>() {
            return complex_code(c);
        }
        if let Some(t) = cause.downcast_ref::<TwistedError>() {
            return twisted_code(t);
        }
        if let Some(s) = cause.downcast_ref::<SpectrumError>() {
            return match s {
                SpectrumError::Complex(c) => complex_code(c),
                SpectrumError::Twisted(t) => twisted_code(t),
                SpectrumError::NoWitnessFound { .. } | SpectrumError::UnrealizedBasisElement { .. } => 3,
                _ => 2,
            };
        }
        if let Some(b) = cause.downcast_ref::<BorelError>() {
            return if matches!(b, BorelError::Csv(_) | BorelError::Shape(_)) { 2 } else { 3 };
        }
        if let Some(c) = cause.downcast_ref::<CharTableError>() {
            return if matches!(c, CharTableError::Csv(_)) { 2 } else { 3 };
        }
    }
    2
}

fn load_group(cli: &Cli) -> Result<Group> {
    let Some(src) = &cli.group else { bail!("--group is required") };
    let path = Path::new(src);
    let g = if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {src}"))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
        parse_group_file(name, &text, DEFAULT_ORDER_BOUND)?
    } else {
        catalog(src)?
    };
    if let Some(p) = cli.prime {
        if p != g.prime() {
            bail!("--prime {p} does not divide |G| = {}", g.order());
        }
    }
    Ok(g)
}

fn class_index(table: &SubgroupClassTable, label: &str) -> Result<usize> {
    (0..table.len())
        .find(|&i| table.label(i) == label)
        .with_context(|| format!("no subgroup class labelled {label:?}"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn input_file(cli: &Cli) -> Result<&Path> {
    cli.file.as_deref().context("--file is required")
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn format(cli: &Cli, allowed: &[Format]) -> Result<Format> {
    match cli.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => bail!("format {f:?} is not available for this command"),
    }
}

struct Session {
    ctx: Arc<GroupCtx>,
    table: SubgroupClassTable,
}

impl Session {
    fn functions(&self) -> Result<Vec<SuperclassFunction>> {
        let chars = dixon_character_table(self.ctx.group())?;
        Ok(real_dimension_functions(&chars, &self.table)?.functions)
    }

    fn complex(&self, path: &Path) -> Result<OrbitComplex> {
        Ok(complex_from_json(&self.ctx, &read(path)?)?)
    }

    fn realized(&self, cli: &Cli) -> Result<Vec<RealizedElement>> {
        let user = cli.with.iter().map(|p| self.complex(p)).collect::<Result<Vec<_>>>()?;
        Ok(realize_basis(&self.ctx, &self.table, &self.functions()?, &user)?)
    }

    fn ring(&self, cli: &Cli) -> Result<TwistedRing> {
        let realized = self.realized(cli)?;
        Ok(TwistedRing::from_realized(self.ctx.clone(), self.table.clone(), &realized))
    }

    fn subgroup(&self, label: &str) -> Result<&Subgroup> {
        Ok(self.table.representative(class_index(&self.table, label)?))
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let g = load_group(cli)?;
    let table = SubgroupClassTable::new(&g);
    let s = Session { ctx: GroupCtx::new(g), table };
    let labels: Vec<String> = (0..s.table.len()).map(|i| s.table.label(i)).collect();
    match &cli.command {
        Command::Subgroups => {
            let normal = s.table.normal_classes();
            let rows: Vec<SubgroupRow> = s
                .table
                .classes()
                .iter()
                .enumerate()
                .map(|(i, c)| SubgroupRow {
                    label: labels[i].clone(),
                    order: c.order(),
                    conjugates: c.members.len(),
                    normal: normal.contains(&i),
                    generators: c.representative.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                })
                .collect();
            match format(cli, &[Format::Csv, Format::Json])? {
                Format::Csv => emit(cli, &rows_to_csv(&rows)),
                Format::Json => emit(cli, &to_json(&rows)),
            }
        }
        Command::Chartable => {
            format(cli, &[Format::Csv])?;
            emit(cli, &table_to_csv(&dixon_character_table(s.ctx.group())?))
        }
        Command::Bsbasis => {
            format(cli, &[Format::Csv])?;
            emit(cli, &functions_to_csv(&s.table, &s.functions()?))
        }
        Command::Bscheck { functions } => {
            format(cli, &[Format::Csv])?;
            let fns = functions_from_csv(&s.table, &read(functions)?)?;
            let constraints = Constraints::new(&s.table);
            let rows: Vec<CheckRow> = fns
                .iter()
                .enumerate()
                .map(|(index, f)| {
                    let rep = is_borel_smith(&constraints, f);
                    CheckRow {
                        index,
                        borel_smith: rep.holds,
                        effective: is_effective(&s.table, f),
                        violations: rep.witnesses.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>().join("; "),
                    }
                })
                .collect();
            emit(cli, &rows_to_csv(&rows))
        }
        Command::Indist => {
            let pairs: Vec<PairRow> = indistinguishable_pairs(&s.table, &s.functions()?)
                .into_iter()
                .map(|(a, b)| PairRow { first: labels[a].clone(), second: labels[b].clone() })
                .collect();
            match format(cli, &[Format::Csv, Format::Json])? {
                Format::Csv => emit(cli, &rows_to_csv(&pairs)),
                Format::Json => emit(cli, &to_json(&pairs)),
            }
        }
        Command::Complex { action } => complex_cmd(cli, &s, action),
        Command::Twisted { action } => twisted_cmd(cli, &s, action),
        Command::Spectrum { action } => spectrum_cmd(cli, &s, action),
    }
}

fn complex_cmd(cli: &Cli, s: &Session, action: &ComplexCmd) -> Result<()> {
    let ctx = &s.ctx;
    match action {
        ComplexCmd::Build { kind, sub, kernel } => {
            format(cli, &[Format::Json])?;
            let sub = sub.as_deref().map(|l| s.subgroup(l)).transpose()?;
            let need = |x: Option<&Subgroup>, what: &str| x.cloned().with_context(|| format!("--{what} is required"));
            let periodic_len = cli.truncate as usize;
            let c = match kind {
                BuildKind::Unit => OrbitComplex::unit(ctx),
                BuildKind::U => builder_u(ctx, &need(sub, "sub")?)?,
                BuildKind::Dihedral => match sub {
                    Some(n) => via_quotient(ctx, n, builder_dihedral)?,
                    None => builder_dihedral(ctx)?,
                },
                BuildKind::Periodic => match sub {
                    Some(n) => via_quotient(ctx, n, |q| builder_periodic(q, periodic_len))?,
                    None => builder_periodic(ctx, periodic_len)?,
                },
                BuildKind::Sphere => {
                    let l = need(sub, "sub")?;
                    let kc = class_index(&s.table, kernel.as_deref().context("--kernel is required")?)?;
                    let k = s.table.class(kc).members.iter().find(|k| k.is_subgroup_of(&l)).context("no conjugate of the kernel lies in L")?;
                    minimize(&builder_sphere(ctx, &l, k)?)?
                }
            };
            emit(cli, &complex_to_json(&c))
        }
        ComplexCmd::Validate => {
            format(cli, &[Format::Json])?;
            let c = s.complex(input_file(cli)?)?;
            emit(cli, &complex_to_json(&c))
        }
        ComplexCmd::Hmarks => {
            format(cli, &[Format::Csv])?;
            let path = input_file(cli)?;
            let c = s.complex(path)?;
            let name = path.file_stem().and_then(|x| x.to_str()).unwrap_or("complex").to_string();
            emit(cli, &h_marks_to_csv(&s.table, &[(name, c.h_marks(&s.table)?)]))
        }
        ComplexCmd::Minimize => {
            format(cli, &[Format::Json])?;
            let c = s.complex(input_file(cli)?)?;
            emit(cli, &complex_to_json(&minimize(&c)?))
        }
        ComplexCmd::Iota { sub } => {
            format(cli, &[Format::Json])?;
            let c = s.complex(input_file(cli)?)?;
            let m = c.iota(s.subgroup(sub)?)?;
            emit(cli, &to_json(&IotaRecord { class: sub.clone(), degree: m.degree, coeffs: m.coeffs }))
        }
    }
}

/// Elements from a file, checked to be fixed cycles of the right component.
fn elements(ring: &TwistedRing, path: &Path) -> Result<Vec<TwistedElement>> {
    let records: Vec<ElementRecord> = from_json(&read(path)?)?;
    let p = ring.prime();
    records
        .iter()
        .map(|r| {
            if r.twist.len() != ring.rank() {
                return Err(TwistedError::TwistLength { expected: ring.rank(), found: r.twist.len() }.into());
            }
            let f = TwistedElement::from(r);
            let m = ring.minimal_model(&f.twist)?;
            let degree = -f.shift;
            if f.coeffs.len() != m.summands(degree).len() || f.coeffs.iter().any(|&c| c >= p) {
                bail!("element does not fit component s = {}, q = {}", f.shift, f.twist);
            }
            if m.orbit_sum_boundary(degree, &f.coeffs).iter().any(|&x| x != 0) {
                bail!("element is not a cycle");
            }
            Ok(f)
        })
        .collect()
}

fn twisted_cmd(cli: &Cli, s: &Session, action: &TwistedCmd) -> Result<()> {
    let ring = s.ring(cli)?;
    match action {
        TwistedCmd::Dims => {
            format(cli, &[Format::Csv])?;
            let twists = Twist::enumerate(ring.rank(), cli.max_twist);
            let shifts: Vec<i32> = (0..=cli.max_shift as i32).map(|x| -x).collect();
            let dims = shifts
                .iter()
                .map(|&sh| twists.iter().map(|q| ring.hom_dimension(q, sh)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            emit(cli, &DimsTable { twists, shifts, dims }.to_csv())
        }
        TwistedCmd::Basis { twist, shift } => {
            format(cli, &[Format::Json])?;
            let q = twist_from_arg(twist)?;
            if q.0.len() != ring.rank() {
                return Err(TwistedError::TwistLength { expected: ring.rank(), found: q.0.len() }.into());
            }
            let b: Vec<ElementRecord> = ring.basis_of_component(&q, *shift)?.iter().map(ElementRecord::from).collect();
            emit(cli, &to_json(&b))
        }
        TwistedCmd::Multiply { left, right, left_index, right_index } => {
            format(cli, &[Format::Json])?;
            let f = elements(&ring, left)?;
            let g = elements(&ring, right)?;
            let f = f.get(*left_index).context("left index out of range")?;
            let g = g.get(*right_index).context("right index out of range")?;
            let prod = ring.multiply(f, g)?;
            emit(cli, &to_json(&vec![ElementRecord::from(&prod)]))
        }
        TwistedCmd::Psihat { sub } => {
            format(cli, &[Format::Json])?;
            let class = class_index(&s.table, sub)?;
            let mut out = Vec::new();
            for f in elements(&ring, input_file(cli)?)? {
                let n = ring.h_mark(&f.twist, class) + f.shift as i64;
                if n > cli.truncate as i64 {
                    bail!("image degree {n} exceeds --truncate {}", cli.truncate);
                }
                let c = ring.psi_hat(&f, class)?;
                out.push(ImageRecord { class: sub.clone(), degree: c.degree, coeffs: c.coeffs });
            }
            emit(cli, &to_json(&out))
        }
    }
}

fn spectrum_cmd(cli: &Cli, s: &Session, action: &SpectrumCmd) -> Result<()> {
    match action {
        SpectrumCmd::Umatrix { partial } => {
            format(cli, &[Format::Csv])?;
            let coverage = if *partial { Coverage::Partial } else { Coverage::Full };
            let m = u_membership_matrix(&s.table, &s.realized(cli)?, coverage)?;
            emit(cli, &m.to_csv())
        }
        SpectrumCmd::Witness { h, k } => {
            format(cli, &[Format::Json])?;
            let (h, k) = (class_index(&s.table, h)?, class_index(&s.table, k)?);
            let w = separation_witness(&s.table, &s.realized(cli)?, h, k)?;
            let mut text = w.to_json();
            text.push('\n');
            emit(cli, &text)
        }
        SpectrumCmd::Compmember { sub } => {
            format(cli, &[Format::Json])?;
            let ring = s.ring(cli)?;
            let class = class_index(&s.table, sub)?;
            let member = elements(&ring, input_file(cli)?)?
                .iter()
                .map(|f| comp_membership(&ring, f, class))
                .collect::<Result<Vec<_>, _>>()?;
            emit(cli, &to_json(&MembershipRecord { class: sub.clone(), member }))
        }
    }
}
