//! `lexvec`: build, inspect and evaluate linguistic word vectors.
//!
//! Results go to standard output as plain numbers or tab-separated lines,
//! diagnostics to standard error. Exit status is 0 on success, 1 on a usage
//! error and 2 when an input cannot be read or is malformed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lexvec_core::eval::{
    load_np_triples, load_sentences, load_word_pairs, mcnemar, np_bracketing_eval, sentiment_eval,
    word_similarity_eval, LabeledSentenceDataset, OovPolicy,
};
use lexvec_core::ingest::{
    derive_connotation, derive_framenet, derive_ptb_pos, derive_thesaurus, derive_wordnet_features,
    parse_attribute_tsv, parse_wordnet_db, read_pairs, write_pairs, AttributeTemplate, Extraction, ThesaurusRelation,
};
use lexvec_core::io::{load_dense, load_sparse, save_dense, save_sparse};
use lexvec_core::linalg::{concat, densify, neighbors, ConcatVectors, Weighting};
use lexvec_core::{DenseEmbeddingTable, MatrixBuilder, SparseBinaryMatrix, WordVectors};

#[derive(Parser)]
#[command(name = "lexvec", version, about = "Sparse linguistic word vectors from lexical resources")]
struct Cli {
    /// Worker threads for parallel sections (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a resource adapter and print `word<TAB>feature` pairs.
    Ingest {
        #[arg(long, value_enum)]
        adapter: Adapter,
        /// Write pairs here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Merge pair files into a sparse matrix file.
    Build {
        #[arg(long)]
        out: PathBuf,
        #[arg(required = true)]
        pairs: Vec<PathBuf>,
    },
    /// Print matrix statistics.
    Stats {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Print the active features of a word, one per line.
    Vector {
        #[arg(long)]
        matrix: PathBuf,
        word: String,
    },
    /// Print the most similar words by cosine.
    Neighbors {
        #[command(flatten)]
        source: VectorSource,
        word: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
    },
    /// Spearman correlation against a scored word-pair file.
    Simeval {
        #[command(flatten)]
        source: VectorSource,
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum, default_value_t = Oov::Skip)]
        oov: Oov,
    },
    /// Dense vectors from a truncated SVD of the matrix.
    Svd {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Scale each column of U by its singular value.
        #[arg(long)]
        weighted: bool,
    },
    /// Sentence polarity with averaged word vectors.
    Sentiment {
        #[command(flatten)]
        source: VectorSource,
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        dev: PathBuf,
        #[arg(long)]
        test: PathBuf,
        /// Write one predicted label (0/1) per test sentence.
        #[arg(long)]
        predictions: Option<PathBuf>,
    },
    /// Noun-phrase bracketing with appended word vectors.
    Npbracket {
        #[command(flatten)]
        source: VectorSource,
        #[arg(long)]
        dataset: PathBuf,
        /// Write one predicted label (L/R) per cross-validated item.
        #[arg(long)]
        predictions: Option<PathBuf>,
        /// Write the gold labels of the same items, in the same order.
        #[arg(long)]
        gold_out: Option<PathBuf>,
    },
    /// Write dense-then-sparse concatenated vectors as a dense table.
    Concat {
        #[arg(long)]
        dense: PathBuf,
        #[arg(long)]
        sparse: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Only these words (one per line); default is the union vocabulary.
        #[arg(long)]
        words: Option<PathBuf>,
        #[arg(long)]
        normalize_blocks: bool,
    },
    /// McNemar's test on two prediction files against a gold file.
    Mcnemar {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        gold: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Adapter {
    Wordnet,
    Supersense,
    Emotion,
    Color,
    Connotation,
    Framenet,
    Ptb,
    Synonyms,
    Antonyms,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oov {
    Skip,
    Zero,
}

/// Where word vectors come from. Giving both concatenates them.
#[derive(Args)]
struct VectorSource {
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long)]
    dense: Option<PathBuf>,
    /// With both sources, scale each block to unit length first.
    #[arg(long)]
    normalize_blocks: bool,
}

enum Failure {
    Usage(String),
    Data(String),
}

type Outcome<T = ()> = Result<T, Failure>;

fn data<E: std::fmt::Display>(context: impl std::fmt::Display) -> impl FnOnce(E) -> Failure {
    move |e| Failure::Data(format!("{context}: {e}"))
}

fn open(path: &Path) -> Outcome<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(data(path.display()))
}

fn create(path: &Path) -> Outcome<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(data(path.display()))
}

fn name(path: &Path) -> String {
    path.display().to_string()
}

fn read_matrix(path: &Path) -> Outcome<SparseBinaryMatrix> {
    load_sparse(open(path)?).map_err(data(path.display()))
}

fn read_dense(path: &Path) -> Outcome<DenseEmbeddingTable> {
    let load = load_dense(open(path)?).map_err(data(path.display()))?;
    if load.duplicates > 0 {
        eprintln!("{}: ignored {} duplicate rows", path.display(), load.duplicates);
    }
    Ok(load.table)
}

enum Loaded {
    Sparse(SparseBinaryMatrix),
    Dense(DenseEmbeddingTable),
    Both(DenseEmbeddingTable, SparseBinaryMatrix, bool),
}

impl Loaded {
    fn read(src: &VectorSource) -> Outcome<Self> {
        match (&src.matrix, &src.dense) {
            (Some(m), None) => Ok(Loaded::Sparse(read_matrix(m)?)),
            (None, Some(d)) => Ok(Loaded::Dense(read_dense(d)?)),
            (Some(m), Some(d)) => Ok(Loaded::Both(read_dense(d)?, read_matrix(m)?, src.normalize_blocks)),
            (None, None) => Err(Failure::Usage("give --matrix, --dense, or both".into())),
        }
    }

    fn with<T>(&self, f: impl FnOnce(&dyn WordVectors) -> T) -> T {
        match self {
            Loaded::Sparse(m) => f(m),
            Loaded::Dense(t) => f(t),
            Loaded::Both(t, m, norm) => f(&ConcatVectors::new(t, m).normalized(*norm)),
        }
    }
}

fn run_adapter(adapter: Adapter, files: &[PathBuf]) -> Outcome<Extraction> {
    if let Adapter::Wordnet = adapter {
        let sources = files.iter().map(|p| Ok((name(p), open(p)?))).collect::<Outcome<Vec<_>>>()?;
        let db = parse_wordnet_db(sources).map_err(data("wordnet"))?;
        for d in &db.dangling {
            eprintln!("dangling pointer: {d:?}");
        }
        return Ok(derive_wordnet_features(&db));
    }
    let mut all = Extraction { pairs: Vec::new(), warnings: 0 };
    for path in files {
        let (src, file) = (open(path)?, name(path));
        let ex = match adapter {
            Adapter::Supersense => parse_attribute_tsv(src, &file, &AttributeTemplate::supersense()),
            Adapter::Emotion => parse_attribute_tsv(src, &file, &AttributeTemplate::emotion()),
            Adapter::Color => parse_attribute_tsv(src, &file, &AttributeTemplate::color()),
            Adapter::Connotation => derive_connotation(src, &file),
            Adapter::Framenet => derive_framenet(src, &file),
            Adapter::Ptb => derive_ptb_pos(src, &file),
            Adapter::Synonyms => derive_thesaurus(src, &file, ThesaurusRelation::Synonym),
            Adapter::Antonyms => derive_thesaurus(src, &file, ThesaurusRelation::Antonym),
            Adapter::Wordnet => unreachable!(),
        }
        .map_err(|e| Failure::Data(e.to_string()))?;
        all.pairs.extend(ex.pairs);
        all.warnings += ex.warnings;
    }
    Ok(all)
}

fn read_lines(path: &Path) -> Outcome<Vec<String>> {
    open(path)?
        .lines()
        .map(|l| l.map(|l| l.trim().to_string()))
        .filter(|l| !matches!(l, Ok(s) if s.is_empty()))
        .collect::<io::Result<_>>()
        .map_err(data(path.display()))
}

fn io_err(e: io::Error) -> Failure {
    Failure::Data(format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Ingest { adapter, out: dest, files } => {
            let ex = run_adapter(adapter, &files)?;
            if ex.warnings > 0 {
                eprintln!("{} warnings", ex.warnings);
            }
            match dest {
                Some(p) => write_pairs(create(&p)?, &ex.pairs).map_err(io_err)?,
                None => write_pairs(&mut *out, &ex.pairs).map_err(io_err)?,
            }
        }
        Command::Build { out: dest, pairs } => {
            let mut builder = MatrixBuilder::new();
            for p in &pairs {
                builder.extend(read_pairs(open(p)?, &name(p)).map_err(|e| Failure::Data(e.to_string()))?);
            }
            let m = builder.freeze();
            save_sparse(&m, create(&dest)?).map_err(io_err)?;
            eprintln!("{} words, {} features, {} active cells", m.n_words(), m.n_features(), m.nnz());
        }
        Command::Stats { matrix } => {
            writeln!(out, "{}", read_matrix(&matrix)?.stats()).map_err(io_err)?;
        }
        Command::Vector { matrix, word } => {
            let m = read_matrix(&matrix)?;
            let names = m
                .feature_names(&word.to_lowercase())
                .ok_or_else(|| Failure::Data(format!("{word}: not in vocabulary")))?;
            for n in names {
                writeln!(out, "{n}").map_err(io_err)?;
            }
        }
        Command::Neighbors { source, word, top } => {
            let vectors = Loaded::read(&source)?;
            let list = vectors
                .with(|v| neighbors(v, &word.to_lowercase(), top))
                .ok_or_else(|| Failure::Data(format!("{word}: not in vocabulary")))?;
            for (w, s) in list {
                writeln!(out, "{w}\t{s:.6}").map_err(io_err)?;
            }
        }
        Command::Simeval { source, dataset, oov } => {
            let vectors = Loaded::read(&source)?;
            let ds = load_word_pairs(open(&dataset)?, &name(&dataset)).map_err(|e| Failure::Data(e.to_string()))?;
            let policy = match oov {
                Oov::Skip => OovPolicy::Skip,
                Oov::Zero => OovPolicy::Zero,
            };
            let r = vectors.with(|v| word_similarity_eval(v, &ds, policy)).map_err(data(dataset.display()))?;
            writeln!(out, "rho {:.6} coverage {:.6}", r.rho, r.coverage).map_err(io_err)?;
        }
        Command::Svd { matrix, k, seed, out: dest, weighted } => {
            let m = read_matrix(&matrix)?;
            let weighting = if weighted { Weighting::USigma } else { Weighting::U };
            let table = densify(&m, k, seed, weighting).map_err(data(matrix.display()))?;
            save_dense(&table, create(&dest)?).map_err(io_err)?;
            writeln!(out, "words {} dim {}", table.len(), table.dim()).map_err(io_err)?;
        }
        Command::Sentiment { source, train, dev, test, predictions } => {
            let vectors = Loaded::read(&source)?;
            let load = |p: &Path| load_sentences(open(p)?, &name(p)).map_err(|e| Failure::Data(e.to_string()));
            let ds = LabeledSentenceDataset { train: load(&train)?, dev: load(&dev)?, test: load(&test)? };
            let r = vectors.with(|v| sentiment_eval(v, &ds)).map_err(data("sentiment"))?;
            if let Some(p) = predictions {
                let mut w = create(&p)?;
                for &y in &r.predictions {
                    writeln!(w, "{}", u8::from(y)).map_err(io_err)?;
                }
                w.flush().map_err(io_err)?;
            }
            writeln!(out, "accuracy {:.6} lambda {} dev_accuracy {:.6}", r.accuracy, r.lambda, r.dev_accuracy)
                .map_err(io_err)?;
        }
        Command::Npbracket { source, dataset, predictions, gold_out } => {
            let vectors = Loaded::read(&source)?;
            let ds = load_np_triples(open(&dataset)?, &name(&dataset)).map_err(|e| Failure::Data(e.to_string()))?;
            let r = vectors.with(|v| np_bracketing_eval(v, &ds)).map_err(data(dataset.display()))?;
            if let Some(p) = predictions {
                let mut w = create(&p)?;
                for (_, label) in &r.predictions {
                    writeln!(w, "{}", label.symbol()).map_err(io_err)?;
                }
                w.flush().map_err(io_err)?;
            }
            if let Some(p) = gold_out {
                let mut w = create(&p)?;
                for (i, _) in &r.predictions {
                    writeln!(w, "{}", ds.items[*i].label.symbol()).map_err(io_err)?;
                }
                w.flush().map_err(io_err)?;
            }
            writeln!(out, "accuracy {:.6} lambda {} tuning_accuracy {:.6}", r.accuracy, r.lambda, r.tuning_accuracy)
                .map_err(io_err)?;
        }
        Command::Concat { dense, sparse, out: dest, words, normalize_blocks } => {
            let t = read_dense(&dense)?;
            let m = read_matrix(&sparse)?;
            let joined = ConcatVectors::new(&t, &m);
            let list: Vec<String> = match words {
                Some(p) => read_lines(&p)?.into_iter().map(|w| w.to_lowercase()).collect(),
                None => joined.words().into_iter().map(str::to_string).collect(),
            };
            let dim = joined.dim();
            let mut w = create(&dest)?;
            let mut written = 0usize;
            let mut rows = Vec::new();
            for word in &list {
                match concat(&t, &m, word, normalize_blocks) {
                    Ok(v) => rows.push((word, v)),
                    Err(_) => eprintln!("{word}: not in either vocabulary, skipped"),
                }
            }
            writeln!(w, "{} {dim}", rows.len()).map_err(io_err)?;
            for (word, v) in rows {
                write!(w, "{word}").map_err(io_err)?;
                for x in v.to_dense() {
                    write!(w, " {x:?}").map_err(io_err)?;
                }
                writeln!(w).map_err(io_err)?;
                written += 1;
            }
            w.flush().map_err(io_err)?;
            writeln!(out, "dim {dim} words {written}").map_err(io_err)?;
        }
        Command::Mcnemar { a, b, gold } => {
            let (pa, pb, g) = (read_lines(&a)?, read_lines(&b)?, read_lines(&gold)?);
            let r = mcnemar(&pa, &pb, &g).map_err(data("mcnemar"))?;
            let method = if r.exact { "exact" } else { "chi2" };
            writeln!(out, "b {} c {} statistic {} p {} method {method}", r.b, r.c, r.statistic, r.p_value)
                .map_err(io_err)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = execute(cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
