#include "achern/monomial_basis.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace achern {

namespace {

void enumerate_degree(int v, int remaining, std::vector<std::uint8_t>& cur, std::vector<std::uint8_t>& out) {
  const int nvars = static_cast<int>(cur.size());
  if (v == nvars - 1) {
    cur[v] = static_cast<std::uint8_t>(remaining);
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[v] = static_cast<std::uint8_t>(e);
    enumerate_degree(v + 1, remaining - e, cur, out);
  }
  cur[v] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int D) : nvars_(nvars), D_(D) {
  if (nvars < 1 || nvars > 255) throw std::invalid_argument("monomial basis needs 1..255 variables");
  if (D < 0 || D > 64) throw std::invalid_argument("truncation degree must be in [0, 64]");

  const int top = nvars + D + 1;
  binom_.assign(top + 1, std::vector<std::uint64_t>(top + 1, 0));
  for (int a = 0; a <= top; ++a) {
    binom_[a][0] = 1;
    for (int b = 1; b <= a; ++b) binom_[a][b] = binom_[a - 1][b - 1] + binom_[a - 1][b];
  }

  std::vector<std::uint8_t> cur(nvars, 0);
  for (int d = 0; d <= D; ++d) {
    degree_start_.push_back(degree_.size());
    const std::size_t before = exps_.size();
    enumerate_degree(0, d, cur, exps_);
    degree_.resize(degree_.size() + (exps_.size() - before) / nvars, d);
  }
  degree_start_.push_back(degree_.size());

  offset_.resize(size() + 1);
  std::size_t acc = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    offset_[i] = acc;
    acc += prefix(D_ - degree_[i]);
  }
  offset_[size()] = acc;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int nvars, int D) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{nvars, D}];
  if (!slot) slot = std::make_shared<MonomialBasis>(nvars, D);
  return slot;
}

std::size_t MonomialBasis::prefix(int d) const {
  if (d < 0) return 0;
  if (d >= D_) return size();
  return degree_start_[d + 1];
}

MonomialBasis::Index MonomialBasis::rank(std::span<const std::uint8_t> exps) const {
  if (static_cast<int>(exps.size()) != nvars_) throw std::invalid_argument("exponent vector has wrong length");
  int r = 0;
  for (auto e : exps) r += e;
  if (r > D_) throw std::out_of_range("monomial degree exceeds truncation");
  std::uint64_t idx = degree_start_[r];
  // Monomials of degree r in k variables: C(r + k - 1, k - 1).
  for (int v = 0; v + 1 < nvars_; ++v) {
    const int k = nvars_ - v - 1;
    for (int t = exps[v] + 1; t <= r; ++t) idx += binom_[r - t + k - 1][k - 1];
    r -= exps[v];
  }
  return static_cast<Index>(idx);
}

const std::vector<MonomialBasis::Index>& MonomialBasis::table() const {
  std::call_once(table_once_, [this] {
    table_.resize(offset_[size()]);
    std::vector<std::uint8_t> sum(nvars_);
    for (std::size_t i = 0; i < size(); ++i) {
      const auto ei = exponents(static_cast<Index>(i));
      const std::size_t width = prefix(D_ - degree_[i]);
      for (std::size_t j = 0; j < width; ++j) {
        const auto ej = exponents(static_cast<Index>(j));
        for (int v = 0; v < nvars_; ++v) sum[v] = static_cast<std::uint8_t>(ei[v] + ej[v]);
        table_[offset_[i] + j] = rank(sum);
      }
    }
  });
  return table_;
}

std::vector<int> MonomialBasis::variable_list(Index i) const {
  std::vector<int> vars;
  const auto e = exponents(i);
  for (int v = 0; v < nvars_; ++v)
    for (int k = 0; k < e[v]; ++k) vars.push_back(v);
  return vars;
}

std::string MonomialBasis::to_string(Index i, int matrix_n) const {
  const auto e = exponents(i);
  std::ostringstream out;
  bool first = true;
  for (int v = 0; v < nvars_; ++v) {
    if (e[v] == 0) continue;
    if (!first) out << '*';
    first = false;
    if (matrix_n > 0)
      out << 'T' << (v / matrix_n + 1) << (v % matrix_n + 1);
    else
      out << 'T' << v;
    if (e[v] > 1) out << '^' << static_cast<int>(e[v]);
  }
  if (first) out << '1';
  return out.str();
}

}  // namespace achern
