// Batch experiment runner for the protocol lab: run protocols exhaustively or
// by Monte-Carlo sweep, search and verify codes, and write machine-readable
// reports. Exit codes: 0 pass, 1 property violation, 2 usage/parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdlab/hdlab.hpp"

using namespace hdlab;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string protocol = "hd_k";
  int n = 16;
  int k = 2;
  int r = 2;
  double delta = 0.125;
  double gamma = 0.25;
  int boost_rounds = 0;  // 0: derived from delta
  uint64_t trials = 1000;
  uint64_t seed = 1;
  bool exhaustive = false;
  std::string out;
  std::vector<std::string> matrices;  // compose: per-coordinate matrix files
  std::string g_name = "hd-count";

  json echo() const {
    json j;
    j["command"] = "run";
    j["protocol"] = protocol;
    j["n"] = n;
    j["k"] = k;
    j["r"] = r;
    j["delta"] = delta;
    j["gamma"] = gamma;
    j["boost_rounds"] = boost_rounds;
    j["trials"] = trials;
    j["seed"] = seed;
    j["exhaustive"] = exhaustive;
    if (!matrices.empty()) {
      j["matrices"] = matrices;
      j["g"] = g_name;
    }
    return j;
  }
};

void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  json j = json::parse(in);
  if (j.contains("protocol")) cfg.protocol = j["protocol"].get<std::string>();
  if (j.contains("n")) cfg.n = j["n"].get<int>();
  if (j.contains("k")) cfg.k = j["k"].get<int>();
  if (j.contains("r")) cfg.r = j["r"].get<int>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("gamma")) cfg.gamma = j["gamma"].get<double>();
  if (j.contains("boost_rounds")) cfg.boost_rounds = j["boost_rounds"].get<int>();
  if (j.contains("trials")) cfg.trials = j["trials"].get<uint64_t>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (j.contains("exhaustive")) cfg.exhaustive = j["exhaustive"].get<bool>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("matrices")) cfg.matrices = j["matrices"].get<std::vector<std::string>>();
  if (j.contains("g")) cfg.g_name = j["g"].get<std::string>();
}

struct Collector {
  std::vector<ReportRow> rows;
  uint64_t cases = 0, errors = 0;
  long double bits_total = 0;

  void add(std::string desc, int truth, int output, const CostReport& cost, uint64_t seed) {
    ++cases;
    bool err = truth != output;
    if (err) ++errors;
    bits_total += static_cast<long double>(cost.bits_sent);
    rows.push_back(
        {std::move(desc), truth, output, err, cost.bits_sent, cost.total_queries(), seed});
  }

  ReportSummary summary(const json& echo) const {
    ReportSummary s;
    s.config_echo = echo.dump();
    s.cases = cases;
    s.errors = errors;
    s.error_rate = cases ? static_cast<double>(errors) / static_cast<double>(cases) : 0.0;
    s.wilson = wilson95(errors, cases);
    s.mean_bits = cases ? static_cast<double>(bits_total / cases) : 0.0;
    return s;
  }
};

void emit(const RunConfig& cfg, const Collector& col) {
  ReportSummary sum = col.summary(cfg.echo());
  if (cfg.out.empty()) {
    write_report(std::cout, sum, col.rows);
  } else {
    std::ofstream out(cfg.out);
    if (!out) throw std::runtime_error("cannot open output file " + cfg.out);
    write_report(out, sum, col.rows);
  }
}

BitString random_bits(int n, std::mt19937_64& rng) {
  BitString x(n);
  for (int i = 0; i < n; ++i)
    if (rng() & 1) x.set(i, true);
  return x;
}

BitString at_distance(const BitString& x, int d, std::mt19937_64& rng) {
  BitString y = x;
  std::vector<size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  for (int i = 0; i < d; ++i) y.flip(idx[i]);
  return y;
}

int run_equality(const RunConfig& cfg) {
  auto p = equality_protocol(std::max(1, ceil_log2(static_cast<uint64_t>(
                                    std::ceil(1.0 / cfg.delta)))));
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    BitString x = random_bits(cfg.n, rng);
    BitString y = (t % 2 == 0) ? x : at_distance(x, 1 + static_cast<int>(rng() % cfg.n), rng);
    int truth = (x == y) ? 1 : 0;
    auto out = run_protocol(p, x, y, trial_seed(cfg.seed, t));
    col.add((t % 2 == 0 ? "equal" : "unequal"), truth, out.output, out.cost,
            trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int run_hd_k(const RunConfig& cfg) {
  auto p = hd_k_protocol(cfg.k, cfg.delta, cfg.n);
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  int classes = cfg.n + 1;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    int d = static_cast<int>(t % classes);
    BitString x = random_bits(cfg.n, rng);
    BitString y = at_distance(x, d, rng);
    auto out = run_protocol(p, x, y, trial_seed(cfg.seed, t));
    col.add("d=" + std::to_string(d), d == cfg.k ? 1 : 0, out.output, out.cost,
            trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int run_hd44(const RunConfig& cfg) {
  auto p = hd44_protocol(cfg.delta, false, cfg.boost_rounds);
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  const int row_len = 8;
  std::vector<std::pair<int, int>> classes = {{4, 4}, {2, 6}, {1, 7}, {3, 5}};
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    auto [d1, d2] = classes[t % classes.size()];
    BlockedString x(cfg.n, row_len), y(cfg.n, row_len);
    for (int i = 0; i < cfg.n; ++i) x.set_block(i, random_bits(row_len, rng));
    y = x;
    size_t i = rng() % cfg.n, j = (i + 1 + rng() % (cfg.n - 1)) % cfg.n;
    y.blocks[i] = at_distance(x.blocks[i], d1, rng);
    y.blocks[j] = at_distance(x.blocks[j], d2, rng);
    auto out = run_protocol(p, x, y, trial_seed(cfg.seed, t));
    col.add("sig={" + std::to_string(d1) + "," + std::to_string(d2) + "}", truth_hd44(x, y),
            out.output, out.cost, trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int run_hd22_tree(const RunConfig& cfg) {
  auto tree = hd22_oracle_tree();
  Collector col;
  if (cfg.exhaustive) {
    // every input with exactly two unequal rows at n rows of 4 bits
    const int len = 4, rows = cfg.n;
    BlockedString x(rows, len), y(rows, len);
    uint64_t idx = 0, bad_query_paths = 0;
    for (int i = 0; i < rows; ++i)
      for (int j = i + 1; j < rows; ++j)
        for (uint64_t a = 0; a < 16; ++a)
          for (uint64_t b = 0; b < 16; ++b) {
            if (a == b) continue;
            for (uint64_t c = 0; c < 16; ++c)
              for (uint64_t d = 0; d < 16; ++d) {
                if (c == d) continue;
                uint64_t fill = splitmix64(idx);
                for (int q = 0; q < rows; ++q) {
                  BitString v = BitString::from_mask((fill >> (4 * q)) & 15, len);
                  x.blocks[q] = v;
                  y.blocks[q] = v;
                }
                x.blocks[i] = BitString::from_mask(a, len);
                y.blocks[i] = BitString::from_mask(b, len);
                x.blocks[j] = BitString::from_mask(c, len);
                y.blocks[j] = BitString::from_mask(d, len);
                auto run = run_oracle_protocol(tree, x, y);
                ++col.cases;
                if (run.output != truth_hdkk(2, x, y)) ++col.errors;
                if (run.query_count != 3) ++bad_query_paths;
                ++idx;
              }
          }
    // per-case rows would be enormous; keep the summary honest instead
    if (bad_query_paths > 0) ++col.errors;
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (uint64_t t = 0; t < cfg.trials; ++t) {
      BlockedString x(cfg.n, 4), y(cfg.n, 4);
      for (int i = 0; i < cfg.n; ++i) x.set_block(i, random_bits(4, rng));
      y = x;
      int unequal = static_cast<int>(t % 4);
      for (int u = 0; u < unequal; ++u) {
        size_t i = rng() % cfg.n;
        y.blocks[i] = at_distance(x.blocks[i], 1 + rng() % 3, rng);
      }
      auto run = run_oracle_protocol(tree, x, y);
      CostReport cost;
      cost.oracle_queries = run.queries_by_kind;
      col.add("unequal=" + std::to_string(unequal), truth_hdkk(2, x, y), run.output, cost,
              cfg.seed);
    }
  }
  emit(cfg, col);
  return col.errors == 0 ? 0 : 1;
}

int run_hd44_cond(const RunConfig& cfg) {
  auto pc = protocol3_code_single(make_product_slice_code(4));
  pc->e1->build_distance_cache();  // e2 shares the table
  auto tree = hd44_conditional_tree(pc, cfg.n);
  std::mt19937_64 rng(cfg.seed);
  auto sl = slice_strings(8, 4);
  Collector col;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    BlockedString x(cfg.n, 8), y(cfg.n, 8);
    for (int i = 0; i < cfg.n; ++i) x.set_block(i, sl[rng() % sl.size()]);
    y = x;
    int d1 = 2 * (1 + static_cast<int>(t % 3));
    size_t i = rng() % cfg.n, j = (i + 1 + rng() % (cfg.n - 1)) % cfg.n;
    // balanced flips keep rows on the slice
    auto flip_balanced = [&](BitString& row, int d) {
      std::vector<size_t> ones, zeros;
      for (size_t q = 0; q < row.size(); ++q) (row.get(q) ? ones : zeros).push_back(q);
      std::shuffle(ones.begin(), ones.end(), rng);
      std::shuffle(zeros.begin(), zeros.end(), rng);
      for (int q = 0; q < d / 2; ++q) {
        row.flip(ones[q]);
        row.flip(zeros[q]);
      }
    };
    flip_balanced(y.blocks[i], d1);
    flip_balanced(y.blocks[j], 8 - d1);
    auto run = run_oracle_protocol(tree, x, y);
    CostReport cost;
    cost.oracle_queries = run.queries_by_kind;
    col.add("sig={" + std::to_string(d1) + "," + std::to_string(8 - d1) + "}",
            truth_hd44(x, y), run.output, cost, cfg.seed);
  }
  emit(cfg, col);
  return col.errors == 0 ? 0 : 1;
}

int run_gaphd(const RunConfig& cfg) {
  auto p = gap_hd_protocol(cfg.gamma, cfg.delta);
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    BitString x = random_bits(cfg.n, rng);
    int d = (t % 2 == 0) ? static_cast<int>(cfg.gamma * cfg.n)
                         : static_cast<int>((1.0 - cfg.gamma) * cfg.n);
    BitString y = at_distance(x, d, rng);
    int truth = truth_gaphd(cfg.gamma, x, y);
    auto out = run_protocol(p, x, y, trial_seed(cfg.seed, t));
    col.add("d=" + std::to_string(d), truth, out.output, out.cost, trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int run_count(const RunConfig& cfg) {
  auto p = count_unequal_blocks(cfg.r, cfg.delta);
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    int diff = static_cast<int>(t % (cfg.r + 2));
    BlockedString x(cfg.n, 8), y(cfg.n, 8);
    for (int i = 0; i < cfg.n; ++i) x.set_block(i, random_bits(8, rng));
    y = x;
    std::vector<size_t> order(cfg.n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    for (int u = 0; u < diff; ++u)
      y.blocks[order[u]] = at_distance(x.blocks[order[u]], 1 + rng() % 8, rng);
    int truth = diff <= cfg.r ? diff : kMoreThanR;
    auto out = run_protocol(p, x, y, trial_seed(cfg.seed, t));
    col.add("diff=" + std::to_string(diff), truth, out.output, out.cost,
            trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int run_compose(const RunConfig& cfg) {
  if (cfg.matrices.empty())
    throw CLI::ValidationError("--protocol compose", "config must list matrix files");
  auto spec = load_composition_spec(cfg.matrices, cfg.r, cfg.delta, cfg.g_name);
  auto proto = compose_distance_r(spec);
  std::mt19937_64 rng(cfg.seed);
  Collector col;
  size_t n = spec->n();
  for (uint64_t t = 0; t < cfg.trials; ++t) {
    std::vector<int> x(n), y(n);
    for (size_t i = 0; i < n; ++i) x[i] = static_cast<int>(rng() % spec->bases[i].n_rows);
    y = x;
    int diffs = static_cast<int>(t % (cfg.r + 2));
    for (int u = 0; u < diffs; ++u) {
      size_t i = rng() % n;
      y[i] = (y[i] + 1 + static_cast<int>(rng() % (spec->bases[i].n_rows - 1))) %
             spec->bases[i].n_rows;
    }
    auto out = run_protocol(proto, x, y, trial_seed(cfg.seed, t));
    col.add("diffs=" + std::to_string(diffs), spec->truth(x, y), out.output, out.cost,
            trial_seed(cfg.seed, t));
  }
  emit(cfg, col);
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  if (cfg.protocol == "equality") return run_equality(cfg);
  if (cfg.protocol == "hd_k") return run_hd_k(cfg);
  if (cfg.protocol == "hd44") return run_hd44(cfg);
  if (cfg.protocol == "hd22_tree") return run_hd22_tree(cfg);
  if (cfg.protocol == "hd44_cond") return run_hd44_cond(cfg);
  if (cfg.protocol == "gaphd") return run_gaphd(cfg);
  if (cfg.protocol == "count") return run_count(cfg);
  if (cfg.protocol == "compose") return run_compose(cfg);
  throw CLI::ValidationError("--protocol", "unknown protocol " + cfg.protocol);
}

int cmd_search(const std::string& f_spec, int n, int m, const std::string& domain,
               uint64_t budget, size_t max_codes, bool no_prefilter,
               const std::string& out_dir) {
  SearchConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.f = PartialF::parse(f_spec);
  cfg.domain = domain == "slice" ? SearchConfig::Domain::Slice : SearchConfig::Domain::Cube;
  cfg.budget = budget;
  cfg.max_codes = max_codes;
  cfg.analytic_prefilter = !no_prefilter;
  auto res = search_fcodes(cfg);

  std::cout << "# search log\n";
  std::cout << "# f: " << cfg.f.to_string() << "\n";
  std::cout << "# n: " << n << " m: " << m << " domain: " << domain << "\n";
  std::cout << "# nodes_explored: " << res.nodes_explored << "\n";
  std::cout << "# prefiltered: " << (res.prefiltered ? res.prefilter_reason : "no") << "\n";
  std::cout << "# exhausted: " << (res.exhausted ? "true" : "false") << "\n";
  std::cout << "# budget_exceeded: " << (res.budget_exceeded ? "true" : "false") << "\n";
  std::cout << "# codes_found: " << res.codes.size() << "\n";
  for (size_t i = 0; i < res.codes.size(); ++i) {
    // re-verify before shipping anything
    if (!verify_fcode(res.codes[i], cfg.f).empty()) return 1;
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_code_file(out_dir + "/code_" + std::to_string(i) + ".txt", res.codes[i]);
    }
  }
  return 0;
}

int cmd_verify(const std::string& code_path, const std::string& f_spec) {
  Code code = read_code_file(code_path);
  PartialF f = f_spec.find(':') != std::string::npos ? PartialF::parse(f_spec)
                                                     : read_partialf_file(f_spec);
  auto violations = verify_fcode(code, f);
  if (violations.empty()) {
    std::cout << "pass: " << code_path << " is an f-code for " << f.to_string() << "\n";
    return 0;
  }
  std::cout << "fail: " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) std::cout << v.to_string() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hdlab: two-party randomized protocol laboratory"};
  app.require_subcommand(1);

  RunConfig run_cfg;
  std::string config_path;
  auto* run = app.add_subcommand("run", "run a protocol and write a report");
  run->add_option("--config", config_path, "JSON config file (flags override)");
  run->add_option("--protocol", run_cfg.protocol,
                  "equality|hd_k|hd44|hd22_tree|hd44_cond|gaphd|count");
  run->add_option("--n", run_cfg.n, "input size (bits, rows, or blocks)");
  run->add_option("--k", run_cfg.k, "distance parameter k");
  run->add_option("--r", run_cfg.r, "composition parameter r");
  run->add_option("--delta", run_cfg.delta, "error budget");
  run->add_option("--gamma", run_cfg.gamma, "GapHD threshold");
  run->add_option("--trials", run_cfg.trials, "Monte-Carlo trials");
  run->add_option("--seed", run_cfg.seed, "tape seed (never wall clock)");
  run->add_flag("--exhaustive", run_cfg.exhaustive, "exhaustive case enumeration");
  run->add_option("--out", run_cfg.out, "report file (default stdout)");

  std::string f_spec, domain = "cube", out_dir;
  int sn = 3, sm = 6;
  uint64_t budget = uint64_t{1} << 22;
  size_t max_codes = 8;
  bool no_prefilter = false;
  auto* search = app.add_subcommand("search-codes", "backtracking f-code existence search");
  search->add_option("--f", f_spec, "partial f as d:value comma list")->required();
  search->add_option("--n", sn, "domain string length");
  search->add_option("--m", sm, "codeword length");
  search->add_option("--domain", domain, "cube|slice");
  search->add_option("--budget", budget, "node budget");
  search->add_option("--max-codes", max_codes, "stop after this many codes");
  search->add_flag("--no-prefilter", no_prefilter, "skip the analytic feasibility filter");
  search->add_option("--out-dir", out_dir, "directory for found code files");

  std::string code_path, verify_f;
  auto* verify = app.add_subcommand("verify", "verify a code file against an f");
  verify->add_option("--code", code_path, "code file")->required();
  verify->add_option("--f", verify_f, "f file or inline d:value list")->required();

  // parse the config file before flags so flags win
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        load_config_file(argv[i + 1], run_cfg);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
    }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (run->parsed()) return cmd_run(run_cfg);
    if (search->parsed())
      return cmd_search(f_spec, sn, sm, domain, budget, max_codes, no_prefilter, out_dir);
    if (verify->parsed()) return cmd_verify(code_path, verify_f);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
