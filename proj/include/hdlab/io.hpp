#pragma once

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hdlab/base_matrix.hpp"
#include "hdlab/codes.hpp"
#include "hdlab/cost.hpp"
#include "hdlab/gap_hd.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/tandem.hpp"

namespace hdlab {

// ---------------------------------------------------------------------------
// Code files: header "n m count", then one "<domain> <codeword>" line per
// entry, both in ASCII 0/1.
// ---------------------------------------------------------------------------

constexpr uint64_t kCodeFileGuardChars = uint64_t{1} << 26;

inline void write_code(std::ostream& out, const Code& code) {
  if (code.m * code.domain_size() > kCodeFileGuardChars)
    throw CapacityError("write_code", code.m * code.domain_size(), kCodeFileGuardChars);
  out << code.n << " " << code.m << " " << code.domain_size() << "\n";
  for (size_t i = 0; i < code.domain_size(); ++i) {
    std::string cw(code.m, '0');
    for (uint32_t c : code.codewords[i]) cw[c] = '1';
    out << code.domain[i].to_string() << " " << cw << "\n";
  }
}

inline void write_code_file(const std::string& path, const Code& code) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_code_file: cannot open " + path);
  write_code(out, code);
}

inline Code read_code(std::istream& in) {
  Code code;
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty code file", 1);
  ++lineno;
  size_t count = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> code.n >> code.m >> count)) throw ParseError("bad header (want: n m count)", 1);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    size_t space = line.find(' ');
    if (space == std::string::npos) throw ParseError("missing codeword column", lineno);
    BitString x = BitString::from_string(line.substr(0, space));
    std::string cw = line.substr(space + 1);
    if (x.size() != code.n) throw ParseError("domain string length mismatch", lineno);
    if (cw.size() != code.m) throw ParseError("codeword length mismatch", lineno);
    std::vector<uint32_t> ones;
    for (size_t i = 0; i < cw.size(); ++i) {
      if (cw[i] == '1')
        ones.push_back(static_cast<uint32_t>(i));
      else if (cw[i] != '0')
        throw ParseError("codeword character is not 0/1", lineno);
    }
    code.add(x, std::move(ones));
  }
  if (code.domain_size() != count) throw ParseError("entry count disagrees with header", lineno);
  if (code.domain_size() == 0) throw ParseError("code file has no entries", lineno);
  return code;
}

inline Code read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_code_file: cannot open " + path);
  return read_code(in);
}

inline PartialF read_partialf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_partialf_file: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty f file", 1);
  return PartialF::parse(line);
}

// ---------------------------------------------------------------------------
// Base matrix files: header "N lambda", then N rows of N entries.
// ---------------------------------------------------------------------------

inline void write_base_matrix(std::ostream& out, const BaseMatrix& m) {
  out << m.n_rows << " " << m.lambda << "\n";
  for (int i = 0; i < m.n_rows; ++i) {
    for (int j = 0; j < m.n_rows; ++j) out << (j ? " " : "") << m.at(i, j);
    out << "\n";
  }
}

inline BaseMatrix read_base_matrix(std::istream& in) {
  int n = 0, lambda = 0;
  if (!(in >> n >> lambda)) throw ParseError("bad matrix header (want: N lambda)", 1);
  std::vector<int> e;
  e.reserve(static_cast<size_t>(n) * n);
  int v;
  while (static_cast<int>(e.size()) < n * n && (in >> v)) e.push_back(v);
  if (static_cast<int>(e.size()) != n * n) throw ParseError("matrix entries truncated", 2);
  BaseMatrix m = BaseMatrix::from_entries(n, std::move(e));
  if (m.lambda > lambda) throw ParseError("entries exceed declared alphabet", 2);
  m.lambda = lambda;
  return m;
}

inline BaseMatrix read_base_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_base_matrix_file: cannot open " + path);
  return read_base_matrix(in);
}

/// Assembles a composition from per-coordinate matrix files plus (r, delta)
/// and a g chosen from the registry; the config-file face of the module.
inline std::shared_ptr<CompositionSpec> load_composition_spec(
    const std::vector<std::string>& matrix_paths, int r, double delta,
    const std::string& g_name) {
  auto spec = std::make_shared<CompositionSpec>();
  for (const auto& path : matrix_paths) spec->bases.push_back(read_base_matrix_file(path));
  spec->r = r;
  spec->delta = delta;
  spec->g = g_from_name(g_name, r);
  spec->validate();
  return spec;
}

// ---------------------------------------------------------------------------
// Tandem protocol files: "q N", q lines of input:value pairs, one rho line.
// ---------------------------------------------------------------------------

inline void write_tandem(std::ostream& out, const TandemProtocol& t) {
  out << t.q << " " << t.alphabet << "\n";
  for (const auto& table : t.queries) {
    for (int x = 0; x < t.alphabet; ++x) out << (x ? "," : "") << x << ":" << table[x];
    out << "\n";
  }
  for (size_t i = 0; i < t.rho.size(); ++i) out << (i ? "," : "") << t.rho[i];
  out << "\n";
}

inline TandemProtocol read_tandem(std::istream& in) {
  TandemProtocol t;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty tandem file", 1);
  {
    std::istringstream hs(line);
    if (!(hs >> t.q >> t.alphabet)) throw ParseError("bad tandem header (want: q N)", 1);
  }
  int lineno = 1;
  for (int i = 0; i < t.q; ++i) {
    if (!std::getline(in, line)) throw ParseError("missing query table", lineno + 1);
    ++lineno;
    std::vector<int> table(t.alphabet, -1);
    std::istringstream ls(line);
    std::string item;
    while (std::getline(ls, item, ',')) {
      size_t colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("query entry missing ':'", lineno);
      int input = std::stoi(item.substr(0, colon));
      if (input < 0 || input >= t.alphabet) throw ParseError("query input out of range", lineno);
      table[input] = std::stoi(item.substr(colon + 1));
    }
    for (int v : table)
      if (v < 0) throw ParseError("query table incomplete", lineno);
    t.queries.push_back(std::move(table));
  }
  if (!std::getline(in, line)) throw ParseError("missing rho line", lineno + 1);
  ++lineno;
  std::istringstream rs(line);
  std::string item;
  while (std::getline(rs, item, ',')) t.rho.push_back(std::stoi(item));
  t.validate();
  return t;
}

// ---------------------------------------------------------------------------
// Reports: a '#'-prefixed summary block followed by CSV rows. No binary
// formats; reports are diff-able in review.
// ---------------------------------------------------------------------------

struct ReportRow {
  std::string case_desc;
  int truth = 0;
  int output = 0;
  bool error = false;
  uint64_t bits_sent = 0;
  uint64_t queries = 0;
  uint64_t seed = 0;
};

inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

struct ReportSummary {
  std::string config_echo;  // exact configuration, reproducibility contract
  uint64_t cases = 0;
  uint64_t errors = 0;
  double error_rate = 0.0;
  WilsonInterval wilson;
  double mean_bits = 0.0;
  std::vector<std::pair<std::string, std::string>> extra;
};

inline void write_report(std::ostream& out, const ReportSummary& sum,
                         const std::vector<ReportRow>& rows) {
  out << "# hdlab report\n";
  out << "# config: " << sum.config_echo << "\n";
  out << "# cases: " << sum.cases << "\n";
  out << "# errors: " << sum.errors << "\n";
  out << "# error_rate: " << format_fixed(sum.error_rate) << "\n";
  out << "# wilson95: [" << format_fixed(sum.wilson.low) << ", " << format_fixed(sum.wilson.high)
      << "]\n";
  out << "# mean_bits_sent: " << format_fixed(sum.mean_bits, 2) << "\n";
  for (const auto& [k, v] : sum.extra) out << "# " << k << ": " << v << "\n";
  out << "case,truth,output,error,bits_sent,queries,seed\n";
  for (const auto& r : rows)
    out << r.case_desc << "," << r.truth << "," << r.output << "," << (r.error ? 1 : 0) << ","
        << r.bits_sent << "," << r.queries << "," << r.seed << "\n";
}

inline void write_embedding_report(std::ostream& out, const GapEmbedding& emb) {
  out << "# gaphd embedding\n";
  out << "# t: " << emb.t << "\n";
  out << "# w: " << emb.w << "\n";
  out << "# gamma: " << format_fixed(emb.gamma, 8) << "\n";
  out << "# L: " << emb.L << "\n";
  out << "# attempts: " << emb.report.attempts << "\n";
  out << "# max_dist_ones: " << emb.report.max_dist_ones << "\n";
  out << "# min_dist_zeros: " << emb.report.min_dist_zeros << "\n";
  out << "seeds";
  for (uint64_t s : emb.seeds) out << "," << s;
  out << "\n";
}

}  // namespace hdlab
