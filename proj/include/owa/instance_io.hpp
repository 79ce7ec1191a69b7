#ifndef OWA_INSTANCE_IO_HPP_
#define OWA_INSTANCE_IO_HPP_

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "owa/core.hpp"

namespace owa {

namespace detail {

// %.17g survives a write -> read -> write cycle byte-identically.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& token, std::size_t line, const char* field) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("line " + std::to_string(line) + ": bad " + field + " value '" +
                     token + "'");
  return v;
}

inline std::size_t parse_count(const std::string& token, std::size_t line,
                               const char* field) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0' || v < 0)
    throw ParseError("line " + std::to_string(line) + ": bad " + field + " value '" +
                     token + "'");
  return static_cast<std::size_t>(v);
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

}  // namespace detail

/// Instance text format, one value per field, diffable and identical
/// across implementations:
///
///   owa-instance v1
///   name <token or - for unnamed>
///   items <n>
///   objectives <K>
///   capacity <B_lo> <B_hi or inf>
///   data
///   <b_i> <c_i1> ... <c_iK>     (n lines, item weight then K costs)
///   weights
///   <w_1> ... <w_K>
///   end
inline void write_instance(const KnapsackInstance& inst, std::ostream& out) {
  out << "owa-instance v1\n";
  out << "name " << (inst.name.empty() ? "-" : inst.name) << "\n";
  out << "items " << inst.items() << "\n";
  out << "objectives " << inst.objectives() << "\n";
  out << "capacity " << detail::format_double(inst.capacity_lo) << " "
      << (inst.capacity_hi ? detail::format_double(*inst.capacity_hi) : "inf") << "\n";
  out << "data\n";
  for (std::size_t i = 0; i < inst.items(); ++i) {
    out << detail::format_double(inst.item_weights[i]);
    const auto row = inst.costs.row(i);
    for (double c : row) out << " " << detail::format_double(c);
    out << "\n";
  }
  out << "weights\n";
  for (std::size_t k = 0; k < inst.owa_weights.size(); ++k)
    out << (k == 0 ? "" : " ") << detail::format_double(inst.owa_weights[k]);
  out << "\nend\n";
}

inline void write_instance(const KnapsackInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_instance(inst, out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

inline KnapsackInstance read_instance(std::istream& in) {
  std::size_t lineno = 0;
  std::string line;
  const auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!detail::split_tokens(line).empty()) return line;
    }
    throw ParseError("line " + std::to_string(lineno + 1) + ": unexpected end of file");
  };

  if (detail::split_tokens(next_line()) != std::vector<std::string>{"owa-instance", "v1"})
    throw ParseError("line 1: expected header 'owa-instance v1'");

  auto tokens = detail::split_tokens(next_line());
  if (tokens.size() != 2 || tokens[0] != "name")
    throw ParseError("line " + std::to_string(lineno) + ": expected 'name <label>'");
  std::string name = tokens[1] == "-" ? "" : tokens[1];

  tokens = detail::split_tokens(next_line());
  if (tokens.size() != 2 || tokens[0] != "items")
    throw ParseError("line " + std::to_string(lineno) + ": expected 'items <n>'");
  const std::size_t n = detail::parse_count(tokens[1], lineno, "items");

  tokens = detail::split_tokens(next_line());
  if (tokens.size() != 2 || tokens[0] != "objectives")
    throw ParseError("line " + std::to_string(lineno) + ": expected 'objectives <K>'");
  const std::size_t k = detail::parse_count(tokens[1], lineno, "objectives");

  tokens = detail::split_tokens(next_line());
  if (tokens.size() != 3 || tokens[0] != "capacity")
    throw ParseError("line " + std::to_string(lineno) +
                     ": expected 'capacity <lo> <hi|inf>'");
  const double cap_lo = detail::parse_double(tokens[1], lineno, "capacity");
  std::optional<double> cap_hi;
  if (tokens[2] != "inf") cap_hi = detail::parse_double(tokens[2], lineno, "capacity");

  if (detail::split_tokens(next_line()) != std::vector<std::string>{"data"})
    throw ParseError("line " + std::to_string(lineno) + ": expected 'data'");

  std::vector<double> b(n);
  std::vector<double> entries(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    tokens = detail::split_tokens(next_line());
    if (tokens.size() != k + 1)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(k + 1) + " fields for item " + std::to_string(i) +
                       ", got " + std::to_string(tokens.size()));
    b[i] = detail::parse_double(tokens[0], lineno, "item weight");
    for (std::size_t j = 0; j < k; ++j)
      entries[i * k + j] = detail::parse_double(tokens[j + 1], lineno, "cost");
  }

  if (detail::split_tokens(next_line()) != std::vector<std::string>{"weights"})
    throw ParseError("line " + std::to_string(lineno) + ": expected 'weights'");
  tokens = detail::split_tokens(next_line());
  if (tokens.size() != k)
    throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(k) +
                     " weights, got " + std::to_string(tokens.size()));
  std::vector<double> w(k);
  for (std::size_t j = 0; j < k; ++j)
    w[j] = detail::parse_double(tokens[j], lineno, "weight");

  if (detail::split_tokens(next_line()) != std::vector<std::string>{"end"})
    throw ParseError("line " + std::to_string(lineno) + ": expected 'end'");

  // constructor checks dimensions, signs, and the weight-sum invariant
  return KnapsackInstance(std::move(b), cap_lo, cap_hi,
                          CostMatrix(n, k, std::move(entries)),
                          WeightVector(std::move(w)), std::move(name));
}

inline KnapsackInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_instance(in);
}

}  // namespace owa

#endif  // OWA_INSTANCE_IO_HPP_
