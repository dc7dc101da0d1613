//! Command-line front end for the characteristic-class calculus and the
//! basis certifier.
//!
//! All numeric output is exact; `--decimal` appends approximations without
//! ever replacing the exact values. Output is byte-stable for fixed inputs
//! and format. Exit codes: 0 = success/pass, 1 = verdict or check failure,
//! 2 = usage or data error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use charcert::algebra::Rat;
use charcert::catalog::{characteristic_number, ChernDataSet, ManifoldDescriptor};
use charcert::certificate::{certify_basis, fraction_string, Verdict};
use charcert::characters::{chern_to_pontryagin, newton_girard};
use charcert::partitions::{bordism_rank, Decoration, Partition};
use charcert::selftest;
use charcert::torus::{c1_power_integral, su2_class_power_integral};
use charcert::Error;

#[derive(Parser)]
#[command(
    name = "charcert",
    version,
    about = "Exact characteristic-number calculus and bordism-basis certification"
)]
struct Cli {
    /// Output format for tabular commands.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,

    /// Append decimal approximations next to exact fractions where applicable.
    #[arg(long, global = true)]
    decimal: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Bundle {
    /// Line bundle with first Chern class summed over the torus pairs.
    Line,
    /// Induced SU(2) bundle with its first Pontryagin class.
    Su2,
}

#[derive(Subcommand)]
enum Command {
    /// Print bordism ranks for every degree up to a bound.
    Ranks {
        /// Family: r (plain), c (line bundle), or h (SU(2) bundle).
        #[arg(long, value_parser = parse_decoration)]
        decoration: Decoration,
        /// Largest degree to list.
        #[arg(long)]
        max_degree: u32,
    },
    /// Print the k-th power-sum polynomial in the universal classes x1..xk.
    NewtonGirard {
        #[arg(long)]
        k: u32,
    },
    /// Print the Pontryagin class p_k as a polynomial in Chern classes.
    Convert {
        #[arg(long)]
        k: u32,
    },
    /// Integrate a bundle-class power over a torus.
    IntegrateTorus {
        /// Bundle whose class is integrated.
        #[arg(long, value_enum)]
        bundle: Bundle,
        /// Torus size parameter: T^(2n) for line, T^(4n) for su2.
        #[arg(long)]
        n: u32,
        /// Exponent of the class; defaults to n (the full-degree power).
        #[arg(long)]
        power: Option<u32>,
    },
    /// Evaluate one characteristic number of a torus x Hilbert-scheme product.
    CharNumber {
        #[arg(long, value_parser = parse_decoration)]
        decoration: Decoration,
        /// Dimension of the torus factor.
        #[arg(long, default_value_t = 0)]
        torus_dim: u32,
        /// Hilbert-scheme factors as a partition, e.g. "2,1" for K3^[2] x K3.
        #[arg(long, default_value = "")]
        k3_parts: String,
        /// Exponent of the family's bundle class.
        #[arg(long, default_value_t = 0)]
        aux_power: u32,
        /// Pontryagin monomial as a partition, e.g. "1,1" for p_1*p_1.
        #[arg(long, default_value = "")]
        partition: String,
        /// Path to the Chern-number data file.
        #[arg(long)]
        data: PathBuf,
    },
    /// Build the pairing matrix for one degree and certify the basis.
    Certify {
        #[arg(long, value_parser = parse_decoration)]
        decoration: Decoration,
        #[arg(long)]
        degree: u32,
        /// Path to the Chern-number data file.
        #[arg(long)]
        data: PathBuf,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include the full matrix (entries and labels) in the certificate.
        #[arg(long)]
        with_matrix: bool,
    },
    /// Run the built-in cross-checks and report each one.
    Selftest,
}

fn parse_decoration(text: &str) -> Result<Decoration, String> {
    text.parse::<Decoration>().map_err(|e| e.to_string())
}

/// Tabular payload rendered uniformly across the three output formats.
struct TableDoc {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl TableDoc {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        let emit_row = |out: &mut String, cells: &[String]| {
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    out.push_str(cell);
                } else {
                    out.push_str(&format!("{:width$}  ", cell, width = widths[i]));
                }
            }
            out.push('\n');
        };
        let header: Vec<String> = self.columns.iter().map(|c| c.to_string()).collect();
        emit_row(&mut out, &header);
        for row in &self.rows {
            emit_row(&mut out, row);
        }
        out
    }

    fn render_csv(&self) -> String {
        fn quote(cell: &str) -> String {
            if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
                format!("\"{}\"", cell.replace('"', "\"\""))
            } else {
                cell.to_string()
            }
        }
        let mut out = String::new();
        out.push_str(
            &self
                .columns
                .iter()
                .map(|c| quote(c))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let value = serde_json::json!({
            "columns": self.columns,
            "rows": self.rows,
        });
        let mut text = serde_json::to_string_pretty(&value).expect("tables always serialize");
        text.push('\n');
        text
    }
}

fn decimal_string(value: &Rat) -> String {
    let numer = value.numer().to_f64().unwrap_or(f64::NAN);
    let denom = value.denom().to_f64().unwrap_or(f64::NAN);
    format!("{:.6}", numer / denom)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Ranks {
            decoration,
            max_degree,
        } => {
            let mut rows = Vec::new();
            for degree in 0..=*max_degree {
                rows.push(vec![
                    decoration.tag().to_string(),
                    degree.to_string(),
                    bordism_rank(*decoration, degree).to_string(),
                ]);
            }
            let doc = TableDoc {
                columns: vec!["decoration", "degree", "rank"],
                rows,
            };
            print!("{}", doc.render(cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::NewtonGirard { k } => {
            if *k < 1 {
                return Err(Error::InvalidQuery(
                    "the power-sum index k must be at least 1".into(),
                ));
            }
            let doc = TableDoc {
                columns: vec!["k", "power_sum"],
                rows: vec![vec![k.to_string(), newton_girard(*k).to_string()]],
            };
            print!("{}", doc.render(cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Convert { k } => {
            if *k < 1 {
                return Err(Error::InvalidQuery(
                    "the Pontryagin index k must be at least 1".into(),
                ));
            }
            let doc = TableDoc {
                columns: vec!["k", "pontryagin_in_chern"],
                rows: vec![vec![k.to_string(), chern_to_pontryagin(*k).to_string()]],
            };
            print!("{}", doc.render(cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::IntegrateTorus { bundle, n, power } => {
            let (torus_dim, class, value) = match bundle {
                Bundle::Line => {
                    let power = power.unwrap_or(*n);
                    (2 * n, "c1", c1_power_integral(*n, power))
                }
                Bundle::Su2 => {
                    let power = power.unwrap_or(*n);
                    (4 * n, "p1'", su2_class_power_integral(4 * n, power)?)
                }
            };
            let power = power.unwrap_or(*n);
            let mut columns = vec!["torus", "class", "power", "integral"];
            let mut row = vec![
                format!("T^{torus_dim}"),
                class.to_string(),
                power.to_string(),
                fraction_string(&value),
            ];
            if cli.decimal {
                columns.push("decimal");
                row.push(decimal_string(&value));
            }
            let doc = TableDoc {
                columns,
                rows: vec![row],
            };
            print!("{}", doc.render(cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::CharNumber {
            decoration,
            torus_dim,
            k3_parts,
            aux_power,
            partition,
            data,
        } => {
            let k3_parts: Partition = k3_parts.parse()?;
            let partition: Partition = partition.parse()?;
            let descriptor = ManifoldDescriptor::new(k3_parts, *torus_dim, *decoration)?;
            let data = ChernDataSet::load(data)?;
            let value = characteristic_number(&descriptor, *aux_power, &partition, &data)?;
            let mut columns = vec!["manifold", "aux_power", "partition", "value"];
            let mut row = vec![
                descriptor.to_string(),
                aux_power.to_string(),
                partition.to_string(),
                fraction_string(&value),
            ];
            if cli.decimal {
                columns.push("decimal");
                row.push(decimal_string(&value));
            }
            let doc = TableDoc {
                columns,
                rows: vec![row],
            };
            print!("{}", doc.render(cli.format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify {
            decoration,
            degree,
            data,
            out,
            with_matrix,
        } => {
            let data = ChernDataSet::load(data)?;
            let certificate = certify_basis(*decoration, *degree, &data)?;
            let document = certificate.to_json(*with_matrix);
            match out {
                Some(path) => {
                    std::fs::write(path, &document)?;
                    println!("verdict: {}", certificate.verdict.as_str());
                }
                None => {
                    print!("{document}");
                }
            }
            Ok(match certificate.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(1),
            })
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        r.name.to_string(),
                        if r.passed { "pass" } else { "fail" }.to_string(),
                    ]
                })
                .collect();
            let doc = TableDoc {
                columns: vec!["check", "result"],
                rows,
            };
            print!("{}", doc.render(cli.format));
            let passed = results.iter().filter(|r| r.passed).count();
            if cli.format == OutputFormat::Table {
                println!("{passed}/{} checks passed", results.len());
            }
            Ok(if passed == results.len() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
