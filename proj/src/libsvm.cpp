#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "mgraal/errors.hpp"
#include "mgraal/logreg.hpp"

namespace mgraal {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view next_token(std::string_view& line) {
  std::size_t b = 0;
  while (b < line.size() && is_space(line[b])) ++b;
  std::size_t e = b;
  while (e < line.size() && !is_space(line[e])) ++e;
  const std::string_view tok = line.substr(b, e - b);
  line.remove_prefix(e);
  return tok;
}

double parse_real(std::string_view tok, std::size_t lineno, const char* what) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError(lineno, std::string("non-numeric ") + what + " '" +
                                 std::string(tok) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view tok, std::size_t lineno) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    throw ParseError(lineno, "non-numeric feature index '" + std::string(tok) + "'");
  }
  if (v == 0) throw ParseError(lineno, "feature indices are 1-based");
  return v;
}

double map_label(double raw, std::size_t lineno) {
  if (raw == 1.0) return 1.0;
  if (raw == -1.0 || raw == 0.0) return -1.0;
  throw ParseError(lineno, "label must be one of -1, 0, +1");
}

}  // namespace

LogRegDataset parse_libsvm(std::istream& in, const LibsvmOptions& options) {
  LogRegDataset ds;
  CsrMatrix& c = ds.features;
  std::size_t max_index = 0;
  std::string buffer;
  std::size_t lineno = 0;
  while (std::getline(in, buffer)) {
    ++lineno;
    std::string_view line(buffer);
    const std::string_view label_tok = next_token(line);
    if (label_tok.empty()) continue;
    ds.labels.push_back(map_label(parse_real(label_tok, lineno, "label"), lineno));
    std::size_t last = 0;
    for (std::string_view tok = next_token(line); !tok.empty(); tok = next_token(line)) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(lineno, "expected idx:val, got '" + std::string(tok) + "'");
      }
      const std::size_t idx = parse_index(tok.substr(0, colon), lineno);
      const double val = parse_real(tok.substr(colon + 1), lineno, "feature value");
      if (idx <= last) {
        throw ParseError(lineno, "feature indices must be strictly increasing");
      }
      if (options.n && idx > *options.n) {
        throw ParseError(lineno, "feature index " + std::to_string(idx) +
                                     " exceeds dimension " + std::to_string(*options.n));
      }
      last = idx;
      max_index = std::max(max_index, idx);
      c.col_idx.push_back(idx - 1);
      c.values.push_back(val);
    }
    c.row_ptr.push_back(c.values.size());
  }
  if (ds.labels.empty()) throw ParseError(0, "LIBSVM input contains no rows");
  c.rows = ds.labels.size();
  c.cols = options.n.value_or(max_index);
  if (c.cols == 0) throw ParseError(0, "LIBSVM input has no features");
  if (options.auto_beta) ds.beta_bar = regularization_weight(ds);
  return ds;
}

LogRegDataset read_libsvm_file(const std::string& path, const LibsvmOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_libsvm(in, options);
}

}  // namespace mgraal
