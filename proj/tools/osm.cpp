// osm: command-line front end for training, evaluation, sampling,
// partition-function estimation and exact oracles.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "osm/checkpoint.hpp"
#include "osm/combinatorics.hpp"
#include "osm/latent.hpp"
#include "osm/learning.hpp"
#include "osm/metrics.hpp"
#include "osm/parallel.hpp"
#include "osm/partition_fn.hpp"
#include "osm/ranking.hpp"
#include "osm/ratings.hpp"
#include "osm/sampler.hpp"

namespace {

using namespace osm;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output goes to a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------- data protocol

struct DataOptions {
  std::string path;
  std::string format = "movielens";
  std::size_t n_train = 10;
  std::size_t min_ratings = 0;  // 0: n_train + 10
  std::size_t max_users = 0;    // 0: all
  bool entropy_filter = true;
  double scale_min = 0.5;
  double scale_max = 5.0;
};

void add_data_options(CLI::App* cmd, DataOptions& d) {
  cmd->add_option("--data", d.path, "ratings file")->required();
  cmd->add_option("--format", d.format, "movielens (user::item::rating[::ts]) or csv")
      ->check(CLI::IsMember({"movielens", "csv"}));
  cmd->add_option("--n-train", d.n_train, "training items per user");
  cmd->add_option("--min-ratings", d.min_ratings, "user filter (default n-train + 10)");
  cmd->add_option("--max-users", d.max_users, "keep a seeded subsample of retained users");
  cmd->add_flag("!--no-entropy-filter", d.entropy_filter, "keep all items");
  cmd->add_option("--scale-min", d.scale_min, "lowest rating on the scale");
  cmd->add_option("--scale-max", d.scale_max, "highest rating on the scale");
}

struct PreparedData {
  DataSplit split;
  std::size_t n_items = 0;
  std::size_t n_users_loaded = 0;
};

PreparedData prepare(const DataOptions& o, std::uint64_t seed) {
  const auto format = o.format == "csv" ? RatingsFormat::csv : RatingsFormat::movielens_dcolon;
  LoadReport report;
  const auto raw = load_ratings(o.path, format, false, &report);
  if (!report.malformed_lines.empty()) {
    fmt::print(stderr, "warning: skipped {} malformed line(s), first at line {}\n",
               report.malformed_lines.size(), report.malformed_lines.front());
  }
  if (report.duplicates) fmt::print(stderr, "warning: {} duplicate rating(s), kept the last\n", report.duplicates);
  auto graded = grade_ratings(raw, RatingScale{o.scale_min, o.scale_max});
  if (o.entropy_filter) graded = entropy_filter(graded);
  SplitSpec spec{o.n_train, o.min_ratings ? o.min_ratings : o.n_train + 10, seed};
  PreparedData out;
  out.split = train_test_split(graded, spec);
  out.n_items = graded.n_items();
  out.n_users_loaded = raw.n_users();
  if (o.max_users && out.split.train.size() > o.max_users) {
    std::vector<std::size_t> idx(out.split.train.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto rng = make_rng(seed, 0x5eedULL);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(o.max_users);
    std::sort(idx.begin(), idx.end());
    DataSplit sub;
    for (auto i : idx) {
      sub.train.push_back(out.split.train[i]);
      sub.test.push_back(out.split.test[i]);
    }
    out.split = std::move(sub);
  }
  return out;
}

std::vector<UserRanking> training_rankings(const DataSplit& split) {
  std::vector<UserRanking> data;
  data.reserve(split.train.size());
  for (const auto& u : split.train) data.push_back(to_user_ranking(u));
  return data;
}

// ---------------------------------------------------------------- models

// A model is either a checkpoint restricted to some items or an inline toy
// model with random indicator-feature weights.
struct ModelOptions {
  std::string checkpoint;
  std::string items;  // comma-separated item indices for checkpoints
  std::size_t toy_n = 0;
  std::size_t toy_hidden = 0;
  double toy_scale = 1.0;
  std::uint64_t toy_seed = 1;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.checkpoint, "checkpoint file");
  cmd->add_option("--items", m.items, "item indices of the checkpoint to model (default: all)");
  cmd->add_option("--toy-n", m.toy_n, "objects in an inline toy model");
  cmd->add_option("--toy-hidden", m.toy_hidden, "hidden units of the toy model");
  cmd->add_option("--toy-scale", m.toy_scale, "toy weights uniform in [-scale, scale]; 0 is uniform");
  cmd->add_option("--toy-seed", m.toy_seed, "seed for the toy weights");
}

PairPotentialModel toy_pair_model(std::size_t n, double scale, Rng& rng) {
  auto p = indicator_features(n);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (auto& a : p.alpha) a = scale > 0 ? u(rng) : 0.0;
  for (auto& b : p.beta) b = scale > 0 ? u(rng) : 0.0;
  return loglinear_pair_model(p);
}

std::vector<ItemId> parse_items(const std::string& text) {
  std::vector<ItemId> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("bad item list '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct LoadedModel {
  LatentModel model;
  std::string description;
};

LoadedModel load_model(const ModelOptions& o) {
  const bool have_ckpt = !o.checkpoint.empty();
  if (have_ckpt == (o.toy_n > 0)) throw UsageError("give exactly one of --model or --toy-n");
  if (have_ckpt) {
    const auto ckpt = load_checkpoint(o.checkpoint);
    std::vector<ItemId> items;
    if (o.items.empty()) {
      for (ItemId i = 0; i < ckpt.params.n_items(); ++i) items.push_back(i);
    } else {
      items = parse_items(o.items);
    }
    for (auto i : items) {
      if (i >= ckpt.params.n_items()) throw UsageError(fmt::format("item {} not in checkpoint", i));
    }
    return {cf_latent_model(ckpt.params, items),
            fmt::format("checkpoint={} items={} K={}", o.checkpoint, items.size(), ckpt.params.K)};
  }
  Rng rng = make_rng(o.toy_seed);
  auto base = toy_pair_model(o.toy_n, o.toy_scale, rng);
  std::vector<PairPotentialModel> hidden;
  for (std::size_t k = 0; k < o.toy_hidden; ++k) hidden.push_back(toy_pair_model(o.toy_n, o.toy_scale, rng));
  return {LatentModel(std::move(base), std::move(hidden)),
          fmt::format("toy n={} K={} scale={} toy_seed={}", o.toy_n, o.toy_hidden, o.toy_scale, o.toy_seed)};
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  DataOptions data;
  std::size_t hidden = 10;
  double lr = 0.01;
  std::size_t block = 100;
  std::size_t epochs = 1;
  std::size_t chain_steps = 1;
  double l2 = 0.0;
  std::uint64_t seed = 1;
  std::string out;
  std::string log;
  std::size_t threads = 0;
};

void add_train_options(CLI::App* cmd, TrainOptions& t, bool with_out) {
  add_data_options(cmd, t.data);
  cmd->add_option("--lr", t.lr, "learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--block", t.block, "users per parameter update")->check(CLI::PositiveNumber);
  cmd->add_option("--epochs", t.epochs, "passes over the training users");
  cmd->add_option("--chain-steps", t.chain_steps, "Gibbs sweeps per chain per update");
  cmd->add_option("--l2", t.l2, "L2 penalty");
  cmd->add_option("--seed", t.seed, "seed for the split, initialization and chains");
  cmd->add_option("--log", t.log, "training log file (default stderr)");
  cmd->add_option("--threads", t.threads, "worker threads (default OSM_THREADS or all cores)");
  if (with_out) {
    cmd->add_option("--hidden", t.hidden, "hidden units K");
    cmd->add_option("--out", t.out, "checkpoint path")->required();
  }
}

TrainResult run_training(const TrainOptions& t, const PreparedData& data, std::size_t K) {
  const auto rankings = training_rankings(data.split);
  TrainConfig cfg;
  cfg.learning_rate = t.lr;
  cfg.block_size = t.block;
  cfg.chain_steps_per_update = t.chain_steps;
  cfg.epochs = t.epochs;
  cfg.K = K;
  cfg.seed = t.seed;
  cfg.l2 = t.l2;
  cfg.threads = resolve_threads(t.threads);

  std::unique_ptr<std::ofstream> log_file;
  if (!t.log.empty()) {
    log_file = std::make_unique<std::ofstream>(t.log);
    if (!*log_file) throw DataError("cannot open " + t.log + " for writing");
  }
  auto emit = [&](const std::string& line) {
    if (log_file) {
      *log_file << line << '\n';
    } else {
      fmt::print(stderr, "{}\n", line);
    }
  };
  emit(fmt::format("# train seed={} users={} items={} K={} lr={} block={} epochs={}", t.seed,
                   rankings.size(), data.n_items, K, t.lr, t.block, t.epochs));
  auto result = train(rankings, data.n_items, cfg, [&](const BlockLog& b, const CFParams&) {
    emit(fmt::format("epoch={} block={} users={} disagreement={:.6f} split_accept={:.4f} merge_accept={:.4f}",
                     b.epoch, b.block, b.users, b.disagreement, b.split_acceptance, b.merge_acceptance));
  });
  if (result.skipped_users) fmt::print(stderr, "warning: skipped {} user(s) with fewer than 2 items\n", result.skipped_users);
  return result;
}

int cmd_train(const TrainOptions& t) {
  const auto data = prepare(t.data, t.seed);
  if (data.split.train.empty()) throw DataError("no users left after filtering");
  const auto result = run_training(t, data, t.hidden);
  save_checkpoint(t.out, Checkpoint{result.params, t.seed});
  fmt::print(stderr, "wrote {} ({} items, K={}, seed={})\n", t.out, data.n_items, t.hidden, t.seed);
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  DataOptions data;
  std::string model;
  std::string metrics = "ndcg@1,ndcg@5,ndcg@10,err";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string per_user;
  std::size_t threads = 0;
};

int cmd_eval(const EvalOptions& e) {
  const auto metrics = parse_metric_list(e.metrics);
  const auto ckpt = load_checkpoint(e.model);
  const std::uint64_t seed = e.seed ? *e.seed : ckpt.seed.value_or(1);
  const auto data = prepare(e.data, seed);
  if (data.n_items != ckpt.params.n_items()) {
    throw DataError(fmt::format("model has {} items but the prepared data has {}", ckpt.params.n_items(),
                                data.n_items));
  }
  const auto report = evaluate_completion(ckpt.params, data.split, metrics, resolve_threads(e.threads));
  Output out(e.out);
  fmt::print(out.stream(), "# eval model={} seed={}\n{}", e.model, seed, format_report(report));
  if (!e.per_user.empty()) {
    Output pu(e.per_user);
    pu.stream() << format_per_user(report);
  }
  return 0;
}

// ---------------------------------------------------------------- sample

struct SampleOptions {
  ModelOptions model;
  std::uint64_t steps = 10000;
  std::optional<std::uint64_t> burn_in;
  std::uint64_t thin = 10;
  std::uint64_t seed = 1;
  std::string init;
  std::size_t inner = 0;
  std::string out;
};

int cmd_sample(const SampleOptions& s) {
  if (s.thin == 0) throw UsageError("--thin must be >= 1");
  const auto loaded = load_model(s.model);
  const auto& m = loaded.model;
  const std::size_t n = m.n_objects();
  if (n == 0) throw UsageError("model has no objects");
  const auto init = s.init.empty() ? OrderedPartition::all_singletons(n) : parse_partition(s.init, n);
  if (init.n_objects() != n) throw UsageError("--init does not match the model size");
  const std::uint64_t burn = s.burn_in.value_or(s.steps / 10);

  Output out(s.out);
  auto& os = out.stream();
  fmt::print(os, "# sample {} seed={} steps={} burn_in={} thin={}\n", loaded.description, s.seed, s.steps, burn, s.thin);
  MoveStats stats;
  if (m.n_hidden() == 0) {
    ChainState chain(init, make_rng(s.seed));
    for (std::uint64_t i = 0; i < s.steps; ++i) {
      mh_step(chain, m.base());
      if (i >= burn && (i - burn) % s.thin == 0) os << to_string(chain.partition) << '\n';
    }
    stats = chain.stats;
  } else {
    LatentChainState chain(init, m.n_hidden(), make_rng(s.seed));
    for (std::uint64_t i = 0; i < s.steps; ++i) {
      gibbs_mh_step(chain, m, s.inner);
      if (i >= burn && (i - burn) % s.thin == 0) os << to_string(chain.chain.partition) << '\n';
    }
    stats = chain.chain.stats;
  }
  fmt::print(stderr, "split acceptance {:.4f} ({} proposed), merge acceptance {:.4f} ({} proposed)\n",
             stats.split_acceptance_rate(), stats.split_proposed, stats.merge_acceptance_rate(),
             stats.merge_proposed);
  return 0;
}

// ---------------------------------------------------------------- estimate-z

struct EstimateOptions {
  ModelOptions model;
  std::size_t temperatures = 1000;
  std::size_t runs = 10;
  std::string schedule = "linear";
  std::size_t inner = 0;
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  std::string out;
  bool weights = false;
};

int cmd_estimate_z(const EstimateOptions& e) {
  const auto loaded = load_model(e.model);
  AISConfig cfg;
  cfg.n_temperatures = e.temperatures;
  cfg.n_runs = e.runs;
  cfg.schedule = e.schedule == "geometric" ? Schedule::geometric : Schedule::linear;
  cfg.inner_steps_per_temperature = e.inner;
  cfg.seed = e.seed;
  cfg.threads = resolve_threads(e.threads);
  const auto r = loaded.model.n_hidden() ? ais_log_z(loaded.model, cfg) : ais_log_z(loaded.model.base(), cfg);
  Output out(e.out);
  auto& os = out.stream();
  fmt::print(os, "# estimate-z {} seed={} S={} R={} schedule={}\n", loaded.description, e.seed, e.temperatures,
             e.runs, e.schedule);
  fmt::print(os, "log_z={}\nlog_z0={}\ness={}\n", r.log_z_estimate, r.log_z0, r.effective_sample_size);
  if (e.weights) {
    for (double w : r.log_weights) fmt::print(os, "log_weight={}\n", w);
  }
  return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleOptions {
  ModelOptions model;
  std::size_t n = 0;
  bool count = false;
  bool enumerate = false;
  bool log_z = false;
  bool marginals = false;
  std::size_t cap = kDefaultEnumerationCap;
  std::string out;
};

int cmd_oracle(const OracleOptions& o) {
  if (!o.count && !o.enumerate && !o.log_z && !o.marginals) {
    throw UsageError("choose at least one of --count, --enumerate, --log-z, --marginals");
  }
  Output out(o.out);
  auto& os = out.stream();
  const bool needs_model = o.log_z || o.marginals;
  std::optional<LoadedModel> loaded;
  if (needs_model) loaded = load_model(o.model);
  const std::size_t n = loaded ? loaded->model.n_objects() : o.n;
  if (!loaded && o.n == 0) throw UsageError("--n is required without a model");
  if (o.count) os << fubini(n) << '\n';
  if (o.enumerate) {
    for_each_ordered_partition(n, [&](const OrderedPartition& x) { os << to_string(x) << '\n'; }, o.cap);
  }
  if (needs_model) {
    const auto& m = loaded->model;
    if (o.log_z) fmt::print(os, "log_z={}\n", exact_log_z(m, o.cap));
    if (o.marginals) {
      // P(i above j), P(i tied with j) for i < j.
      std::vector<double> above(n * n, 0.0), tied(n * n, 0.0);
      std::vector<double> log_p;
      std::vector<OrderedPartition> states;
      for_each_ordered_partition(
          n,
          [&](const OrderedPartition& x) {
            states.push_back(x);
            log_p.push_back(annealed_unnorm_log_prob(x, 1.0, m));
          },
          o.cap);
      const double lz = log_sum_exp(log_p);
      for (std::size_t s = 0; s < states.size(); ++s) {
        const double p = std::exp(log_p[s] - lz);
        const auto blk = states[s].block_of();
        for (Object i = 0; i < n; ++i) {
          for (Object j = 0; j < n; ++j) {
            if (i == j) continue;
            if (blk[i] < blk[j]) above[i * n + j] += p;
            if (blk[i] == blk[j]) tied[i * n + j] += p;
          }
        }
      }
      fmt::print(os, "# i j p_above p_below p_tied\n");
      for (Object i = 0; i < n; ++i) {
        for (Object j = i + 1; j < n; ++j) {
          fmt::print(os, "{} {} {} {} {}\n", i, j, above[i * n + j], above[j * n + i], tied[i * n + j]);
        }
      }
    }
  }
  return 0;
}

// ---------------------------------------------------------------- sweep

struct SweepOptions {
  TrainOptions train;
  std::string hidden_list = "1,2,4,8";
  std::string metrics = "ndcg@1,ndcg@5,ndcg@10,err";
  std::string out;
};

int cmd_sweep(const SweepOptions& s) {
  const auto metrics = parse_metric_list(s.metrics);
  const auto ks = parse_items(s.hidden_list);
  const auto data = prepare(s.train.data, s.train.seed);
  if (data.split.train.empty()) throw DataError("no users left after filtering");
  Output out(s.out);
  auto& os = out.stream();
  fmt::print(os, "# sweep seed={} users={} items={}\nK\tmetric\tmean\tstd_error\tn_users\n", s.train.seed,
             data.split.train.size(), data.n_items);
  for (auto K : ks) {
    const auto result = run_training(s.train, data, K);
    const auto report = evaluate_completion(result.params, data.split, metrics, resolve_threads(s.train.threads));
    for (const auto& m : report.summaries) {
      fmt::print(os, "{}\t{}\t{}\t{}\t{}\n", K, m.metric.name(), m.mean, m.std_error, m.n_users);
    }
    os.flush();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ordered sets model: training, evaluation, sampling and exact oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "osm 0.1.0");

  TrainOptions train_opts;
  auto* train_cmd = app.add_subcommand("train", "train a latent model on ratings");
  add_train_options(train_cmd, train_opts, true);

  EvalOptions eval_opts;
  auto* eval_cmd = app.add_subcommand("eval", "rank held-out items and report NDCG/ERR");
  add_data_options(eval_cmd, eval_opts.data);
  eval_cmd->add_option("--model", eval_opts.model, "checkpoint from train")->required();
  eval_cmd->add_option("--metrics", eval_opts.metrics, "comma-separated: ndcg@T, err");
  eval_cmd->add_option("--seed", eval_opts.seed, "split seed (default: the checkpoint's seed)");
  eval_cmd->add_option("--out", eval_opts.out, "report file (default stdout)");
  eval_cmd->add_option("--per-user", eval_opts.per_user, "per-user metric file");
  eval_cmd->add_option("--threads", eval_opts.threads, "worker threads");

  SampleOptions sample_opts;
  auto* sample_cmd = app.add_subcommand("sample", "run the split-merge sampler and dump states");
  add_model_options(sample_cmd, sample_opts.model);
  sample_cmd->add_option("--steps", sample_opts.steps, "MH steps (sweeps for latent models)");
  sample_cmd->add_option("--burn-in", sample_opts.burn_in, "default 10% of steps");
  sample_cmd->add_option("--thin", sample_opts.thin, "keep every thin-th state");
  sample_cmd->add_option("--seed", sample_opts.seed, "chain seed");
  sample_cmd->add_option("--init", sample_opts.init, "initial state, e.g. 0,2>1 (default all singletons)");
  sample_cmd->add_option("--inner", sample_opts.inner, "MH steps per latent sweep (default n)");
  sample_cmd->add_option("--out", sample_opts.out, "dump file (default stdout)");

  EstimateOptions est_opts;
  auto* est_cmd = app.add_subcommand("estimate-z", "annealed importance sampling estimate of log Z");
  add_model_options(est_cmd, est_opts.model);
  est_cmd->add_option("--temperatures", est_opts.temperatures, "annealing intervals S")->check(CLI::Range(2, 100000000));
  est_cmd->add_option("--runs", est_opts.runs, "independent runs R")->check(CLI::PositiveNumber);
  est_cmd->add_option("--schedule", est_opts.schedule, "linear or geometric")
      ->check(CLI::IsMember({"linear", "geometric"}));
  est_cmd->add_option("--inner", est_opts.inner, "MH steps per temperature (default n)");
  est_cmd->add_option("--seed", est_opts.seed, "base seed; run r uses stream r");
  est_cmd->add_option("--threads", est_opts.threads, "worker threads");
  est_cmd->add_option("--out", est_opts.out, "result file (default stdout)");
  est_cmd->add_flag("--weights", est_opts.weights, "also print every run's log weight");

  OracleOptions oracle_opts;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact counts, enumeration, Z and marginals");
  add_model_options(oracle_cmd, oracle_opts.model);
  oracle_cmd->add_option("--n", oracle_opts.n, "number of objects (without a model)");
  oracle_cmd->add_flag("--count", oracle_opts.count, "print the number of ordered partitions");
  oracle_cmd->add_flag("--enumerate", oracle_opts.enumerate, "print every ordered partition");
  oracle_cmd->add_flag("--log-z", oracle_opts.log_z, "exact log partition function");
  oracle_cmd->add_flag("--marginals", oracle_opts.marginals, "exact pairwise order marginals");
  oracle_cmd->add_option("--cap", oracle_opts.cap, "largest n to enumerate");
  oracle_cmd->add_option("--out", oracle_opts.out, "output file (default stdout)");

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "train and evaluate over several hidden sizes");
  add_train_options(sweep_cmd, sweep_opts.train, false);
  sweep_cmd->add_option("--hidden-list", sweep_opts.hidden_list, "comma-separated K values");
  sweep_cmd->add_option("--metrics", sweep_opts.metrics, "comma-separated: ndcg@T, err");
  sweep_cmd->add_option("--out", sweep_opts.out, "table file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train_opts);
    if (*eval_cmd) return cmd_eval(eval_opts);
    if (*sample_cmd) return cmd_sample(sample_opts);
    if (*est_cmd) return cmd_estimate_z(est_opts);
    if (*oracle_cmd) return cmd_oracle(oracle_opts);
    if (*sweep_cmd) return cmd_sweep(sweep_opts);
  } catch (const CapExceeded& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitCap;
  } catch (const UsageError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
