//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::carrier::{build_carrier, Keyword};
use crate::cipher::{decrypt, default_scan, encrypt, preset_pipeline, PresetVariant};
use crate::error::Error;
use crate::grid_scan::{generate_path, ScanSpec};
use crate::keylang::{parse_pipeline, PipelineExpr};
use crate::metrics::report;
use crate::pgm::{read_pgm, write_pgm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_INVALID_PIPELINE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "scancrypt",
    version,
    about = "SCAN-pattern and carrier-image grayscale encryption"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt a P5 graymap with a pipeline.
    Encrypt(Transform),
    /// Undo `encrypt` with the same pipeline.
    Decrypt(Transform),
    /// Print distortion metrics for an image, optionally against a reference.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the cells visited by a scan, one `row col` pair per line.
    ScanPath {
        #[arg(long)]
        scan: ScanSpec,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        cols: u32,
    },
    /// Write the carrier image for a keyword.
    Carrier {
        #[arg(long)]
        key: Keyword,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        rows: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        cols: u32,
        #[arg(long)]
        output: PathBuf,
    },
    /// Print the five preset pipelines for a scan spec and keyword.
    Presets {
        #[arg(long, default_value_t = default_scan())]
        scan: ScanSpec,
        #[arg(long)]
        key: Keyword,
    },
}

#[derive(Debug, Args)]
struct Transform {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Pipeline expression, e.g. 'add(scan(D0, img), key("secret"))'.
    #[arg(long, conflicts_with_all = ["preset", "scan", "key"], required_unless_present = "preset")]
    pipeline: Option<String>,
    #[arg(long)]
    preset: Option<PresetVariant>,
    #[arg(long, default_value_t = default_scan())]
    scan: ScanSpec,
    #[arg(long)]
    key: Option<Keyword>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

impl Transform {
    fn pipeline(&self) -> Result<PipelineExpr, Error> {
        if let Some(text) = &self.pipeline {
            return parse_pipeline(text);
        }
        let variant = self.preset.expect("clap requires --pipeline or --preset");
        match (&self.key, variant) {
            (Some(kw), v) => Ok(preset_pipeline(v, self.scan, kw)),
            (None, PresetVariant::A) => Ok(PipelineExpr::scan(self.scan, PipelineExpr::Img)),
            (None, v) => Err(Error::Usage(format!("preset {v} needs --key"))),
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Pgm(_) => EXIT_IO,
        Error::NotDecryptable(_) => EXIT_INVALID_PIPELINE,
        _ => EXIT_USAGE,
    }
}

/// Runs the tool with `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_cli_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "scancrypt: {e}");
            exit_code(&e)
        }
    }
}

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_cli_with(
        args,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Error> {
    match command {
        Command::Encrypt(t) => {
            let expr = t.pipeline()?;
            let img = read_pgm(&t.input)?;
            write_pgm(&encrypt(&img, &expr)?, &t.output)
        }
        Command::Decrypt(t) => {
            let expr = t.pipeline()?;
            let img = read_pgm(&t.input)?;
            write_pgm(&decrypt(&img, &expr)?, &t.output)
        }
        Command::Metrics {
            input,
            reference,
            format,
        } => {
            let img = read_pgm(input)?;
            let reference = reference.map(read_pgm).transpose()?;
            let rep = report::<f64>(&img, reference.as_ref())?;
            let text = match format {
                Format::Text => rep.to_text(),
                Format::Structured => rep.to_json() + "\n",
            };
            out.write_all(text.as_bytes())?;
            Ok(())
        }
        Command::ScanPath { scan, rows, cols } => {
            let path = generate_path(scan, rows as usize, cols as usize);
            for (r, c) in path.order() {
                writeln!(out, "{r} {c}")?;
            }
            Ok(())
        }
        Command::Carrier {
            key,
            rows,
            cols,
            output,
        } => write_pgm(&build_carrier(&key, rows as usize, cols as usize)?, output),
        Command::Presets { scan, key } => {
            for v in PresetVariant::ALL {
                writeln!(out, "{v}: {}", preset_pipeline(v, scan, &key))?;
            }
            Ok(())
        }
    }
}
