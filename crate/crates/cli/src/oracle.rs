use std::path::PathBuf;

use clap::{Args, ValueEnum};
use gtsp_core::exact::{evaluate_all_breaks, rearranged_order};
use gtsp_core::gen::random_instance;
use gtsp_core::kopt::two_opt_neighbours;
use gtsp_core::oracle::{co_brute_force, path_co_weight_brute};
use gtsp_core::{cluster_optimize, two_opt, write_instance, AdaptationOption, GtspInstance, Tour, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{display_path, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Co,
    Exact,
    #[value(name = "2opt")]
    TwoOpt,
    All,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Directory for the reduced instance of a mismatch.
    #[arg(long, default_value = ".")]
    dump_dir: PathBuf,
    /// Offset every fast result by one.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// An instance as raw data plus the cluster order under test.
#[derive(Debug, Clone)]
struct Case {
    matrix: Vec<Vec<Weight>>,
    clusters: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl Case {
    fn random(rng: &mut ChaCha8Rng, symmetric: bool) -> Self {
        let m = rng.random_range(3..=7);
        let g = random_instance(rng, m, 3, 100, symmetric);
        let n = g.n();
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        Case {
            matrix: (0..n).map(|x| (0..n).map(|y| g.w(x, y)).collect()).collect(),
            clusters: g.clusters().to_vec(),
            order,
        }
    }

    fn instance(&self) -> GtspInstance {
        GtspInstance::from_matrix("oracle-case", &self.matrix, self.clusters.clone()).expect("case stays valid")
    }

    fn without_vertex(&self, v: usize) -> Case {
        let keep: Vec<usize> = (0..self.matrix.len()).filter(|&x| x != v).collect();
        let shift = |x: usize| if x > v { x - 1 } else { x };
        Case {
            matrix: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.matrix[a][b]).collect())
                .collect(),
            clusters: self
                .clusters
                .iter()
                .map(|c| c.iter().filter(|&&x| x != v).map(|&x| shift(x)).collect())
                .collect(),
            order: self.order.clone(),
        }
    }

    fn without_cluster(&self, c: usize) -> Case {
        let mut case = self.clone();
        let mut doomed = case.clusters[c].clone();
        doomed.sort_unstable_by(|a, b| b.cmp(a));
        for v in doomed {
            case = case.without_vertex(v);
        }
        case.clusters.remove(c);
        case.order.retain(|&x| x != c);
        for x in &mut case.order {
            if *x > c {
                *x -= 1;
            }
        }
        case
    }

    /// Smaller cases: one cluster or one vertex of a multi-vertex cluster
    /// removed.
    fn shrink_candidates(&self) -> Vec<Case> {
        let mut out = Vec::new();
        if self.clusters.len() > 3 {
            out.extend((0..self.clusters.len()).map(|c| self.without_cluster(c)));
        }
        for c in self.clusters.iter().filter(|c| c.len() > 1) {
            out.extend(c.iter().map(|&v| self.without_vertex(v)));
        }
        out
    }
}

/// Values that must agree: the fast algorithm's and the oracle's.
fn compare(suite: Suite, case: &Case) -> (Vec<Weight>, Vec<Weight>) {
    let g = case.instance();
    let first_vertices: Vec<usize> = case.order.iter().map(|&c| g.cluster(c)[0]).collect();
    let tour = Tour::new(&g, first_vertices).expect("one vertex per cluster");
    match suite {
        Suite::Co => {
            let fast = cluster_optimize(&g, &tour);
            let slow = co_brute_force(&g, &tour);
            let mut a = vec![fast.weight()];
            a.extend(fast.vertices().iter().map(|&v| v as Weight));
            let mut b = vec![slow.weight()];
            b.extend(slow.vertices().iter().map(|&v| v as Weight));
            (a, b)
        }
        Suite::Exact => {
            let (values, _) = evaluate_all_breaks(&g, &case.order, true);
            let expected = (0..case.order.len() - 2)
                .map(|i| path_co_weight_brute(&g, &rearranged_order(&case.order, i)))
                .collect();
            (values, expected)
        }
        Suite::TwoOpt => {
            let local = two_opt(&g, &tour, AdaptationOption::Opt1).expect("symmetric case");
            let best_neighbour = two_opt_neighbours(&local)
                .iter()
                .map(|vs| g.cycle_weight(vs))
                .min()
                .unwrap_or(Weight::MAX);
            (vec![local.weight()], vec![local.weight().min(best_neighbour)])
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn mismatch(suite: Suite, case: &Case, fault: bool) -> bool {
    let (mut fast, slow) = compare(suite, case);
    if fault {
        fast[0] += 1;
    }
    fast != slow
}

fn minimize(suite: Suite, mut case: Case, fault: bool) -> Case {
    'outer: loop {
        for smaller in case.shrink_candidates() {
            if mismatch(suite, &smaller, fault) {
                case = smaller;
                continue 'outer;
            }
        }
        return case;
    }
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Co => "co",
        Suite::Exact => "exact",
        Suite::TwoOpt => "2opt",
        Suite::All => "all",
    }
}

pub fn run(args: OracleArgs) -> Result<(), Failure> {
    let suites = match args.suite {
        Suite::All => vec![Suite::Co, Suite::Exact, Suite::TwoOpt],
        s => vec![s],
    };
    for suite in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for trial in 0..args.trials {
            let case = Case::random(&mut rng, suite == Suite::TwoOpt || trial % 2 == 0);
            if !mismatch(suite, &case, args.inject_fault) {
                continue;
            }
            let reduced = minimize(suite, case, args.inject_fault);
            let order: Vec<String> = reduced.order.iter().map(|c| (c + 1).to_string()).collect();
            let instance = reduced
                .instance()
                .with_name(format!("{}-mismatch", suite_name(suite)))
                .with_comment(Some(format!("cluster order {}", order.join(" "))));
            std::fs::create_dir_all(&args.dump_dir)?;
            let path = args.dump_dir.join(format!("oracle-{}-{trial}.gtsp", suite_name(suite)));
            std::fs::write(&path, write_instance(&instance))?;
            println!("{}: {trial}/{} equal", suite_name(suite), args.trials);
            return Err(Failure::new(
                Failure::MISMATCH,
                format!(
                    "{} mismatch in trial {trial}; reduced instance written to {}",
                    suite_name(suite),
                    display_path(&path)
                ),
            ));
        }
        println!("{}: {}/{} equal", suite_name(suite), args.trials, args.trials);
    }
    Ok(())
}
