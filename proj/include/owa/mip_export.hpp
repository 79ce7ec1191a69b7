#ifndef OWA_MIP_EXPORT_HPP_
#define OWA_MIP_EXPORT_HPP_

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "owa/core.hpp"
#include "owa/instance_io.hpp"

namespace owa {

namespace detail {

// wraps LP-format expressions; continuation lines start with a space
class LpLineWriter {
 public:
  LpLineWriter(std::ostream& out, std::size_t limit = 200) : out_(out), limit_(limit) {}

  void begin(const std::string& head) {
    out_ << head;
    width_ = head.size();
  }

  void term(const std::string& text) {
    if (width_ + text.size() + 1 > limit_) {
      out_ << "\n ";
      width_ = 1;
    }
    out_ << " " << text;
    width_ += text.size() + 1;
  }

  void end() { out_ << "\n"; }

 private:
  std::ostream& out_;
  std::size_t limit_;
  std::size_t width_ = 0;
};

}  // namespace detail

/// Writes the linearized OWA model in CPLEX LP format:
///
///   minimize sum_k (p_k + q_k)
///   s.t.     p_k + q_j >= sum_i w_k c_ij x_i   for all j, k
///            capacity_lo <= b'x (<= capacity_hi)
///            x binary, p and q free
///
/// Variables are named x_<i>, p_<k>, q_<k> (1-based). The K^2 ordering
/// rows are named ord_<k>_<j>.
inline void export_mip(const KnapsackInstance& inst, std::ostream& out) {
  const std::size_t n = inst.items();
  const std::size_t k = inst.objectives();
  detail::LpLineWriter line(out);

  out << "\\ OWA min-knapsack (" << (inst.name.empty() ? "unnamed" : inst.name)
      << "): n=" << n << " K=" << k << "\n";
  out << "Minimize\n";
  line.begin(" obj:");
  for (std::size_t j = 1; j <= k; ++j) {
    line.term((j == 1 ? "p_" : "+ p_") + std::to_string(j));
    line.term("+ q_" + std::to_string(j));
  }
  line.end();

  out << "Subject To\n";
  line.begin(" cap_lo:");
  for (std::size_t i = 0; i < n; ++i)
    line.term((i == 0 ? "" : "+ ") + detail::format_double(inst.item_weights[i]) + " x_" +
              std::to_string(i + 1));
  line.term(">= " + detail::format_double(inst.capacity_lo));
  line.end();
  if (inst.capacity_hi) {
    line.begin(" cap_hi:");
    for (std::size_t i = 0; i < n; ++i)
      line.term((i == 0 ? "" : "+ ") + detail::format_double(inst.item_weights[i]) +
                " x_" + std::to_string(i + 1));
    line.term("<= " + detail::format_double(*inst.capacity_hi));
    line.end();
  }
  for (std::size_t rank = 0; rank < k; ++rank) {
    for (std::size_t obj = 0; obj < k; ++obj) {
      line.begin(" ord_" + std::to_string(rank + 1) + "_" + std::to_string(obj + 1) + ":");
      line.term("p_" + std::to_string(rank + 1));
      line.term("+ q_" + std::to_string(obj + 1));
      for (std::size_t i = 0; i < n; ++i) {
        const double coeff = inst.owa_weights[rank] * inst.costs.at(i, obj);
        line.term("- " + detail::format_double(coeff) + " x_" + std::to_string(i + 1));
      }
      line.term(">= 0");
      line.end();
    }
  }

  out << "Bounds\n";
  for (std::size_t j = 1; j <= k; ++j) {
    out << " p_" << j << " free\n";
    out << " q_" << j << " free\n";
  }

  out << "Binaries\n";
  line.begin("");
  for (std::size_t i = 1; i <= n; ++i) line.term("x_" + std::to_string(i));
  line.end();
  out << "End\n";
}

inline void export_mip(const KnapsackInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  export_mip(inst, out);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace owa

#endif  // OWA_MIP_EXPORT_HPP_
