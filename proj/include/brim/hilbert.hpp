#ifndef BRIM_HILBERT_HPP
#define BRIM_HILBERT_HPP

#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "brim/rees.hpp"

namespace brim {

struct Axis {
  std::string name;
  int lo = 0;
  int hi = 0;

  int extent() const { return hi - lo + 1; }
  bool operator==(const Axis&) const = default;
};

/// Integer values over a box of multi-indices, row-major (last axis fastest).
struct LengthTable {
  std::vector<Axis> axes;
  std::vector<long long> values;

  std::size_t cells() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(std::max(0, a.extent()));
    return n;
  }

  std::vector<int> index_of(std::size_t flat) const {
    std::vector<int> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
      auto ext = static_cast<std::size_t>(axes[k].extent());
      idx[k] = axes[k].lo + static_cast<int>(flat % ext);
      flat /= ext;
    }
    return idx;
  }

  std::size_t flat_of(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      require(idx[k] >= axes[k].lo && idx[k] <= axes[k].hi, ErrorKind::InvalidInput, "index outside the table window");
      f = f * static_cast<std::size_t>(axes[k].extent()) + static_cast<std::size_t>(idx[k] - axes[k].lo);
    }
    return f;
  }

  long long at(const std::vector<int>& idx) const { return values[flat_of(idx)]; }

  bool operator==(const LengthTable&) const = default;
};

/// Iterated forward differences; orders[k] applications along axis k.
inline LengthTable finite_difference(const LengthTable& t, const std::vector<int>& orders) {
  require(orders.size() == t.axes.size(), ErrorKind::InvalidInput, "difference orders do not match the table axes");
  LengthTable cur = t;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    require(orders[k] >= 0, ErrorKind::InvalidInput, "negative difference order");
    for (int step = 0; step < orders[k]; ++step) {
      require(cur.axes[k].extent() >= 2, ErrorKind::WindowTooSmall,
              "window on axis " + cur.axes[k].name + " too small for the requested difference");
      LengthTable nxt;
      nxt.axes = cur.axes;
      nxt.axes[k].hi -= 1;
      nxt.values.resize(nxt.cells());
      for (std::size_t f = 0; f < nxt.values.size(); ++f) {
        auto idx = nxt.index_of(f);
        long long a = cur.at(idx);
        ++idx[k];
        nxt.values[f] = cur.at(idx) - a;
      }
      cur = std::move(nxt);
    }
  }
  return cur;
}

template <FieldScalar K>
struct LengthQuery {
  std::vector<GradedSubmodule<K>> modules;
  std::vector<int> exponents;
  int qdeg = 0;
  std::vector<Polynomial<K>> quotient_elems;
};

/// Thread-safe memo of E_i^n.
template <FieldScalar K>
class PowerMemo {
 public:
  explicit PowerMemo(std::vector<GradedSubmodule<K>> mods, ResourceCaps caps = {})
      : mods_(std::move(mods)), caps_(caps) {}

  GradedSubmodule<K> get(std::size_t i, int n) {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto& s = slots_[{i, n}];
      if (!s) s = std::make_shared<Slot>();
      slot = s;
    }
    std::call_once(slot->once, [&] { slot->value = n == 1 ? mods_[i] : product(mods_[i], get(i, n - 1), caps_); });
    return slot->value;
  }

  const std::vector<GradedSubmodule<K>>& modules() const { return mods_; }

 private:
  struct Slot {
    std::once_flag once;
    GradedSubmodule<K> value;
  };
  std::vector<GradedSubmodule<K>> mods_;
  ResourceCaps caps_;
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, std::shared_ptr<Slot>> slots_;
};

namespace detail {

/// Generators of E^n T_q + Σ quotient_elems * S in the slice of t-degree
/// e.n + q.  All-zero exponents give T_q itself.
template <FieldScalar K>
GeneratorSet<K> slice_generators(PowerMemo<K>& memo, const std::vector<int>& n, int q,
                                 const std::vector<Polynomial<K>>& quot, std::optional<GradedSubmodule<K>>* prod_out = nullptr) {
  const auto& mods = memo.modules();
  require(n.size() == mods.size(), ErrorKind::InvalidInput, "one exponent per module expected");
  require(q >= 0, ErrorKind::InvalidInput, "negative q");
  require(!mods.empty(), ErrorKind::InvalidInput, "need at least one module");
  std::optional<GradedSubmodule<K>> prod;
  int ambient = q;
  for (std::size_t i = 0; i < n.size(); ++i) {
    require(n[i] >= 0, ErrorKind::InvalidInput, "negative exponent");
    if (n[i] == 0) continue;
    ambient += mods[i].tdeg() * n[i];
    auto pw = memo.get(i, n[i]);
    prod = prod ? product(*prod, pw) : pw;
  }
  const auto& r = mods.front().ring();
  GeneratorSet<K> gs = prod ? times_slice(prod->generators(), q) : full_slice<K>(r, q);
  if (prod_out) *prod_out = prod;
  if (quot.empty()) return gs;
  auto g = gs.gens();
  for (const auto& f : quot) {
    if (f.is_zero()) continue;
    auto b = bidegree(f);
    require(b.tdeg.has_value(), ErrorKind::InvalidInput, "quotient element is not t-homogeneous");
    require(*b.tdeg <= ambient, ErrorKind::InvalidInput, "quotient element has t-degree above the ambient slice");
    for (const auto& mu : t_monomials(r, ambient - *b.tdeg)) g.push_back(f.times_monomial(mu));
  }
  return GeneratorSet<K>(r, ambient, std::move(g));
}

template <FieldScalar K>
long long length_with(PowerMemo<K>& memo, const std::vector<int>& n, int q, const std::vector<Polynomial<K>>& quot) {
  bool any = false;
  for (int v : n) any = any || v > 0;
  require(any, ErrorKind::InvalidInput, "at least one exponent must be >= 1");
  std::optional<GradedSubmodule<K>> prod;
  auto gs = slice_generators(memo, n, q, quot, &prod);
  // E^n alone already carries its basis
  auto rep = q == 0 && quot.empty() ? colength(prod->basis()) : colength(buchberger(gs));
  require(rep.finite, ErrorKind::InfiniteColength, "length query has infinite colength");
  return rep.value;
}

}  // namespace detail

/// l(S_(., e.n+q) / (E^n T_q + quotient elements)).
template <FieldScalar K>
long long length(const LengthQuery<K>& lq) {
  PowerMemo<K> memo(lq.modules);
  return detail::length_with(memo, lq.exponents, lq.qdeg, lq.quotient_elems);
}

/// What a table is a table of: the modules, whether q is an axis, and the
/// extra elements to quotient by.
template <FieldScalar K>
struct TableTemplate {
  std::vector<GradedSubmodule<K>> modules;
  bool q_axis = false;
  int qdeg = 0;  ///< used when q is not an axis
  std::vector<Polynomial<K>> quotient_elems;

  std::vector<std::string> axis_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < modules.size(); ++i) names.push_back("n" + std::to_string(i + 1));
    if (q_axis) names.push_back("q");
    return names;
  }
};

/// Cells already known, keyed by multi-index.  The CLI fills this from its
/// on-disk cache; evaluation adds what it computes.
using CellStore = std::map<std::vector<int>, long long>;

struct TableOptions {
  unsigned threads = 1;
  CellStore* store = nullptr;
};

template <FieldScalar K>
LengthTable evaluate_table(const TableTemplate<K>& tpl, const std::vector<Axis>& window, PowerMemo<K>& memo,
                           const TableOptions& opts = {}) {
  require(window.size() == tpl.modules.size() + (tpl.q_axis ? 1 : 0), ErrorKind::InvalidInput,
          "window does not match the table template");
  LengthTable t;
  t.axes = window;
  t.values.assign(t.cells(), 0);
  CellStore scratch;
  CellStore& store = opts.store ? *opts.store : scratch;

  std::vector<std::size_t> todo;
  for (std::size_t f = 0; f < t.values.size(); ++f) {
    auto it = store.find(t.index_of(f));
    if (it != store.end())
      t.values[f] = it->second;
    else
      todo.push_back(f);
  }

  auto cell = [&](std::size_t f) {
    auto idx = t.index_of(f);
    std::vector<int> n(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(tpl.modules.size()));
    int q = tpl.q_axis ? idx.back() : tpl.qdeg;
    return detail::length_with(memo, n, q, tpl.quotient_elems);
  };

  unsigned nthreads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(todo.size())));
  if (nthreads <= 1) {
    for (auto f : todo) t.values[f] = cell(f);
  } else {
    std::vector<std::exception_ptr> errs(todo.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
          try {
            t.values[todo[k]] = cell(todo[k]);
          } catch (...) {
            errs[k] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    // first failure in cell order, as a sequential run would report
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }
  for (auto f : todo) store[t.index_of(f)] = t.values[f];
  return t;
}

template <FieldScalar K>
LengthTable table(const TableTemplate<K>& tpl, const std::vector<Axis>& window, const TableOptions& opts = {}) {
  PowerMemo<K> memo(tpl.modules);
  return evaluate_table(tpl, window, memo, opts);
}

enum class MultKind { Ebr, TildeEbr, Mixed, Assoc };

inline std::string to_string(MultKind k) {
  switch (k) {
    case MultKind::Ebr: return "ebr";
    case MultKind::TildeEbr: return "tilde_ebr";
    case MultKind::Mixed: return "mixed";
    case MultKind::Assoc: return "assoc";
  }
  return "?";
}

struct MultiplicityResult {
  long long value = 0;
  MultKind kind = MultKind::Ebr;
  std::vector<int> dvec;
  int j = 0;
  int width = 3;
  /// Box of the difference table over which it is constant.
  std::vector<Axis> certificate;
  LengthTable table;
};

struct ExtractOptions {
  int width = 3;
  /// Largest index any axis may reach.
  int n_max = 12;
  int q_min_hi = 4;
  int grow = 2;
  unsigned threads = 1;
  CellStore* store = nullptr;
};

namespace detail {

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Grows the window until the difference table is constant on a trailing
/// box of the configured width along every axis.
template <FieldScalar K>
MultiplicityResult extract(const TableTemplate<K>& tpl, const std::vector<int>& dvec, int j, MultKind kind,
                           const ExtractOptions& opts) {
  require(opts.width >= 1, ErrorKind::InvalidInput, "stabilization width must be positive");
  for (const auto& e : tpl.modules) mprimary_check(e);

  std::vector<int> orders = dvec;
  std::vector<Axis> window;
  auto names = tpl.axis_names();
  for (std::size_t i = 0; i < dvec.size(); ++i) window.push_back({names[i], 1, dvec[i] + opts.width});
  if (tpl.q_axis) {
    orders.push_back(j);
    window.push_back({"q", 0, std::max(opts.q_min_hi, j + opts.width - 1)});
  }

  PowerMemo<K> memo(tpl.modules);
  CellStore scratch;
  TableOptions topts{opts.threads, opts.store ? opts.store : &scratch};
  long long jf = factorial(j);

  for (;;) {
    for (const auto& a : window)
      require(a.hi <= opts.n_max, ErrorKind::NoStabilization,
              "no stable difference table with axis " + a.name + " up to " + std::to_string(opts.n_max));
    LengthTable t = evaluate_table(tpl, window, memo, topts);
    LengthTable diff = finite_difference(t, orders);

    std::vector<Axis> box = diff.axes;
    for (auto& a : box) a.lo = a.hi - opts.width + 1;
    bool constant = true;
    std::vector<int> corner;
    for (const auto& a : box) corner.push_back(a.lo);
    long long v = diff.at(corner);
    LengthTable probe{box, {}};
    for (std::size_t f = 0; f < probe.cells() && constant; ++f)
      if (diff.at(probe.index_of(f)) != v) constant = false;

    if (constant && v % jf == 0) {
      if (v == 0 && (kind == MultKind::Ebr || kind == MultKind::TildeEbr)) {
        bool any = false;
        for (auto x : t.values) any = any || x != 0;
        require(!any, ErrorKind::DegreeDeficiency, "top-order differences vanish on a nonzero table");
      }
      MultiplicityResult res;
      res.value = v / jf;
      res.kind = kind;
      res.dvec = dvec;
      res.j = j;
      res.width = opts.width;
      res.certificate = box;
      res.table = std::move(t);
      return res;
    }
    for (auto& a : window) a.hi += opts.grow;
  }
}

template <FieldScalar K>
int top_degree(const GradedSubmodule<K>& e) {
  return e.ring().nx + e.ring().nt - 1;
}

}  // namespace detail

/// Higher-degree Buchsbaum-Rim multiplicity of E in F^e.
template <FieldScalar K>
MultiplicityResult tilde_ebr(const GradedSubmodule<K>& e, const ExtractOptions& opts = {}) {
  TableTemplate<K> tpl{{e}, false, 0, {}};
  return detail::extract(tpl, {detail::top_degree(e)}, 0, MultKind::TildeEbr, opts);
}

/// Buchsbaum-Rim multiplicity; E must sit in t-degree 1.
template <FieldScalar K>
MultiplicityResult ebr(const GradedSubmodule<K>& e, const ExtractOptions& opts = {}) {
  require(e.tdeg() == 1, ErrorKind::InvalidDegree, "ebr needs a submodule of F (t-degree 1)");
  TableTemplate<K> tpl{{e}, false, 0, {}};
  return detail::extract(tpl, {detail::top_degree(e)}, 0, MultKind::Ebr, opts);
}

template <FieldScalar K>
void check_type(const std::vector<GradedSubmodule<K>>& es, const std::vector<int>& dvec, int j) {
  require(!es.empty(), ErrorKind::InvalidInput, "need at least one module");
  require(es.size() == dvec.size(), ErrorKind::InvalidInput, "one type entry per module expected");
  int s = j;
  for (int v : dvec) {
    require(v >= 0, ErrorKind::InvalidInput, "type entries must be >= 0");
    s += v;
  }
  require(j >= 0, ErrorKind::InvalidInput, "j must be >= 0");
  for (const auto& e : es) require(e.ring().same_layout(es.front().ring()), ErrorKind::InvalidInput, "modules over different rings");
  require(s == detail::top_degree(es.front()), ErrorKind::InvalidInput,
          "type must sum to d + p - 1 = " + std::to_string(detail::top_degree(es.front())));
}

template <FieldScalar K>
MultiplicityResult mixed(const std::vector<GradedSubmodule<K>>& es, const std::vector<int>& dvec,
                         const ExtractOptions& opts = {}) {
  check_type(es, dvec, 0);
  TableTemplate<K> tpl{es, false, 0, {}};
  return detail::extract(tpl, dvec, 0, MultKind::Mixed, opts);
}

/// Associated mixed multiplicity: the n^d q^j coefficient, normalized by d! j!.
template <FieldScalar K>
MultiplicityResult assoc_mixed(const std::vector<GradedSubmodule<K>>& es, const std::vector<int>& dvec, int j,
                               const ExtractOptions& opts = {}) {
  check_type(es, dvec, j);
  TableTemplate<K> tpl{es, true, 0, {}};
  return detail::extract(tpl, dvec, j, MultKind::Assoc, opts);
}

}  // namespace brim

#endif  // BRIM_HILBERT_HPP
