#include "brim/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "brim/jointred.hpp"
#include "brim/koszul.hpp"
#include "brim/parse.hpp"

namespace brim::cli {

using json = nlohmann::json;

CacheConfig CacheConfig::from_environment() {
  CacheConfig c;
  if (const char* v = std::getenv("BRIM_CACHE"); v && std::string_view(v) == "off") c.enabled = false;
  if (const char* d = std::getenv("BRIM_CACHE_DIR"); d && *d) c.dir = d;
  return c;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ResourceLimit:
    case ErrorKind::WindowTooSmall:
    case ErrorKind::NoStabilization:
    case ErrorKind::DegreeDeficiency:
    case ErrorKind::SuperficialSamplingFailed:
      return 3;
    case ErrorKind::Internal:
      return 4;
    default:
      return 2;
  }
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  require(EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorKind::Internal,
          "SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

/// Everything the subcommands can be given.  Not every field applies to
/// every command; echo() records the ones that do.
struct Args {
  std::string command;
  std::string specfile;
  std::vector<std::string> modules, elements, quotient;
  std::string element, umodule;
  std::vector<int> n, dvec;
  int q = 0;
  int j = 0;
  std::optional<int> t;
  int nmax = 6;
  int qmax = 2;
  std::uint64_t seed = 1;
  int attempts = 5;
  unsigned threads = 1;
};

// ---------------------------------------------------------------------------
// spec files

json read_spec(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot open spec file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string("spec file is not valid JSON: ") + e.what());
  }
}

FieldSpec parse_field(const json& f) {
  if (f.is_null()) return FieldSpec::rationals();
  if (f.is_number_unsigned() || f.is_number_integer()) {
    auto q = f.get<long long>();
    require(q > 0 && q < (1LL << 31), ErrorKind::InvalidInput, "field characteristic out of range");
    return FieldSpec::prime_field(static_cast<std::uint32_t>(q));
  }
  require(f.is_string(), ErrorKind::InvalidInput, "ring.field must be \"QQ\" or a prime");
  auto s = f.get<std::string>();
  if (s == "QQ" || s == "Q") return FieldSpec::rationals();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') s = s.substr(3, s.size() - 4);
  try {
    std::size_t used = 0;
    long long q = std::stoll(s, &used);
    require(used == s.size() && q > 0 && q < (1LL << 31), ErrorKind::InvalidInput, "bad field '" + s + "'");
    return FieldSpec::prime_field(static_cast<std::uint32_t>(q));
  } catch (const std::logic_error&) {
    fail(ErrorKind::InvalidInput, "bad field '" + s + "'");
  }
}

PolyRing parse_ring(const json& doc) {
  require(doc.is_object() && doc.contains("ring") && doc["ring"].is_object(), ErrorKind::InvalidInput,
          "spec needs a \"ring\" object");
  const auto& r = doc["ring"];
  require(r.contains("d") && r["d"].is_number_integer() && r.contains("p") && r["p"].is_number_integer(),
          ErrorKind::InvalidInput, "ring needs integer d and p");
  OrderKind order = OrderKind::PositionOverTerm;
  if (r.contains("order")) {
    require(r["order"].is_string(), ErrorKind::InvalidInput, "ring.order must be a string");
    order = order_from_string(r["order"].get<std::string>());
  }
  return PolyRing(r["d"].get<int>(), r["p"].get<int>(), parse_field(r.value("field", json())), order);
}

std::string text_of(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail(ErrorKind::InvalidInput, "expected a polynomial string, got " + v.dump());
}

template <FieldScalar K>
Polynomial<K> parse_vector(const PolyRing& r, int e, const json& v) {
  std::vector<Polynomial<K>> h;
  for (const auto& c : v) h.push_back(parse_polynomial<K>(text_of(c), r));
  return from_vector(r, e, h);
}

template <FieldScalar K>
struct Spec {
  PolyRing ring;
  std::map<std::string, GradedSubmodule<K>> modules;
  std::map<std::string, Polynomial<K>> elements;

  const GradedSubmodule<K>& module(const std::string& name) const {
    auto it = modules.find(name);
    require(it != modules.end(), ErrorKind::InvalidInput, "unknown module '" + name + "'");
    return it->second;
  }
  std::vector<GradedSubmodule<K>> modules_of(const std::vector<std::string>& names) const {
    std::vector<GradedSubmodule<K>> out;
    for (const auto& n : names) out.push_back(module(n));
    return out;
  }
  const Polynomial<K>& element(const std::string& name) const {
    auto it = elements.find(name);
    require(it != elements.end(), ErrorKind::InvalidInput, "unknown element '" + name + "'");
    return it->second;
  }
  std::vector<Polynomial<K>> elements_of(const std::vector<std::string>& names) const {
    std::vector<Polynomial<K>> out;
    for (const auto& n : names) out.push_back(element(n));
    return out;
  }
};

template <FieldScalar K>
Spec<K> build_spec(const json& doc, const PolyRing& r) {
  Spec<K> s;
  s.ring = r;
  if (doc.contains("modules")) {
    require(doc["modules"].is_object(), ErrorKind::InvalidInput, "\"modules\" must be an object");
    for (const auto& item : doc["modules"].items()) {
      const std::string& name = item.key();
      const json& m = item.value();
      require(m.is_object() && m.contains("gens") && m["gens"].is_array(), ErrorKind::InvalidInput,
              "module '" + name + "' needs a \"gens\" array");
      int e = 1;
      if (m.contains("tdeg")) {
        require(m["tdeg"].is_number_integer(), ErrorKind::InvalidInput, "module '" + name + "': tdeg must be an integer");
        e = m["tdeg"].get<int>();
      }
      std::vector<Polynomial<K>> gens;
      for (const auto& g : m["gens"]) gens.push_back(g.is_array() ? parse_vector<K>(r, e, g) : parse_polynomial<K>(text_of(g), r));
      s.modules.emplace(name, GradedSubmodule<K>(GeneratorSet<K>(r, e, std::move(gens))));
    }
  }
  if (doc.contains("elements")) {
    require(doc["elements"].is_object(), ErrorKind::InvalidInput, "\"elements\" must be an object");
    for (const auto& item : doc["elements"].items()) {
      const std::string& name = item.key();
      const json& v = item.value();
      require(!s.modules.count(name), ErrorKind::InvalidInput, "name '" + name + "' used for a module and an element");
      s.elements.emplace(name, v.is_array() ? parse_vector<K>(r, 1, v) : parse_polynomial<K>(text_of(v), r));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// report payloads

json opt(const std::optional<int>& v) { return v ? json(*v) : json(); }

json table_json(const LengthTable& t) {
  json axes = json::array(), window = json::array();
  for (const auto& a : t.axes) {
    axes.push_back(a.name);
    window.push_back({a.lo, a.hi});
  }
  return {{"axes", axes}, {"window", window}, {"values", t.values}};
}

std::optional<LengthTable> table_from_json(const json& j) {
  try {
    LengthTable t;
    const auto& axes = j.at("axes");
    const auto& window = j.at("window");
    if (!axes.is_array() || !window.is_array() || axes.size() != window.size()) return std::nullopt;
    for (std::size_t k = 0; k < axes.size(); ++k)
      t.axes.push_back({axes[k].get<std::string>(), window[k].at(0).get<int>(), window[k].at(1).get<int>()});
    t.values = j.at("values").get<std::vector<long long>>();
    if (t.values.size() != t.cells()) return std::nullopt;
    return t;
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

json mult_json(const MultiplicityResult& m) {
  json cert = json::array();
  for (const auto& a : m.certificate) cert.push_back({{"axis", a.name}, {"lo", a.lo}, {"hi", a.hi}});
  return {{"value", m.value}, {"kind", to_string(m.kind)}, {"dvec", m.dvec}, {"j", m.j},
          {"width", m.width}, {"certificate", cert}, {"table", table_json(m.table)}};
}

json decision_json(const Decision& d) {
  return {{"verdict", to_string(d.verdict)},
          {"n0", opt(d.n0)},
          {"counterexample", d.counterexample ? json(*d.counterexample) : json()},
          {"counterexample_n", opt(d.counterexample_n)},
          {"n_max", d.n_max},
          {"q_max", d.q_max},
          {"c1", opt(d.c1)}};
}

template <FieldScalar K>
json criterion_json(const CriterionReport<K>& c) {
  json els = json::array();
  for (const auto& x : c.elements) els.push_back(to_string(x));
  return {{"lhs", mult_json(c.lhs)},
          {"rhs", mult_json(c.rhs)},
          {"heights_ok", c.heights_ok},
          {"radical_ok", c.radical_ok},
          {"decision", decision_json(c.decision)},
          {"consistent", c.consistent},
          {"elements", els},
          {"seed", c.seed ? json(*c.seed) : json()},
          {"attempts", c.attempts}};
}

json echo(const Args& a) {
  json e = {{"name", a.command}};
  const std::string& c = a.command;
  auto has = [&](std::initializer_list<const char*> cs) {
    for (const char* x : cs)
      if (c == x) return true;
    return false;
  };
  if (has({"length", "ebr", "tilde-ebr", "mixed", "assoc", "check joint", "check superficial", "check converse",
           "check risler", "check reduction", "check rees"}))
    e["modules"] = a.modules;
  if (c == "length") {
    e["n"] = a.n;
    e["q"] = a.q;
    e["quotient"] = a.quotient;
  }
  if (has({"mixed", "assoc", "check risler"})) e["dvec"] = a.dvec;
  if (c == "assoc") e["j"] = a.j;
  if (c == "gmult") {
    e["elements"] = a.elements;
    e["t"] = opt(a.t);
  }
  if (has({"check joint", "check converse"})) e["elements"] = a.elements;
  if (c == "check superficial") {
    e["element"] = a.element;
    e["quotient"] = a.quotient;
  }
  if (has({"check reduction", "check rees"})) e["u"] = a.umodule;
  if (has({"check reduction", "check joint", "check rees", "check converse"})) e["nmax"] = a.nmax;
  if (c == "check joint") e["qmax"] = a.qmax;
  if (c == "check risler") e["attempts"] = a.attempts;
  return e;
}

// ---------------------------------------------------------------------------
// cache

class TableCache {
 public:
  TableCache(const CacheConfig& cfg, const std::string& key) : cfg_(cfg), key_(key) {}

  /// Fills `store` from disk; true on a usable hit.
  bool load(CellStore& store) const {
    if (!cfg_.enabled) return false;
    std::ifstream in(path());
    if (!in) return false;
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception&) {
      return false;
    }
    auto t = table_from_json(j);
    if (!t) return false;
    for (std::size_t f = 0; f < t->values.size(); ++f) store[t->index_of(f)] = t->values[f];
    return true;
  }

  void save(const LengthTable& t) const {
    if (!cfg_.enabled) return;
    std::error_code ec;
    std::filesystem::create_directories(cfg_.dir, ec);
    if (ec) return;  // a read-only cwd just means no cache
    auto tmp = path();
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << table_json(t).dump() << '\n';
    }
    std::filesystem::rename(tmp, path(), ec);
  }

  std::string status(bool hit) const { return !cfg_.enabled ? "off" : hit ? "hit" : "miss"; }

 private:
  std::filesystem::path path() const { return cfg_.dir / (key_ + ".json"); }
  const CacheConfig& cfg_;
  std::string key_;
};

// ---------------------------------------------------------------------------
// dispatch

struct Outcome {
  json result;
  json seed;
  std::string cache = "unused";
};

template <FieldScalar K>
Outcome execute(const Args& a, const Spec<K>& s, const CacheConfig& cfg, const std::string& key) {
  Outcome o;
  ExtractOptions xo;
  xo.threads = a.threads;
  const std::string& c = a.command;

  auto cached = [&](auto&& compute) {
    TableCache cache(cfg, key);
    CellStore store;
    bool hit = cache.load(store);
    ExtractOptions opts = xo;
    opts.store = &store;
    MultiplicityResult m = compute(opts);
    if (!hit) cache.save(m.table);
    o.cache = cache.status(hit);
    return mult_json(m);
  };
  auto single = [&]() -> const GradedSubmodule<K>& {
    require(a.modules.size() == 1, ErrorKind::InvalidInput, c + " takes exactly one module");
    return s.module(a.modules.front());
  };

  if (c == "length") {
    LengthQuery<K> lq{s.modules_of(a.modules), a.n, a.q, s.elements_of(a.quotient)};
    o.result = {{"length", length(lq)}};
  } else if (c == "ebr") {
    const auto& e = single();
    o.result = cached([&](const ExtractOptions& opts) { return ebr(e, opts); });
  } else if (c == "tilde-ebr") {
    const auto& e = single();
    o.result = cached([&](const ExtractOptions& opts) { return tilde_ebr(e, opts); });
  } else if (c == "mixed") {
    auto es = s.modules_of(a.modules);
    o.result = cached([&](const ExtractOptions& opts) { return mixed(es, a.dvec, opts); });
  } else if (c == "assoc") {
    auto es = s.modules_of(a.modules);
    o.result = cached([&](const ExtractOptions& opts) { return assoc_mixed(es, a.dvec, a.j, opts); });
  } else if (c == "gmult") {
    KoszulSpec<K> ks(s.elements_of(a.elements));
    auto g = g_mult_et(ks, a.t);
    json slices = json::array();
    for (const auto& sh : g.slices)
      slices.push_back({{"delta", sh.delta}, {"chain", sh.chain}, {"homology", sh.homology}});
    o.result = {{"value", g.value}, {"t", g.t}, {"euler", g.euler}, {"slices", slices}};
  } else if (c == "check reduction") {
    o.result = decision_json(is_reduction(s.module(a.umodule), single(), a.nmax));
  } else if (c == "check joint") {
    o.result = decision_json(is_joint_reduction(s.elements_of(a.elements), s.modules_of(a.modules), a.nmax, a.qmax));
  } else if (c == "check superficial") {
    o.result = decision_json(verify_superficial(s.element(a.element), s.modules_of(a.modules), SuperficialWindow{},
                                                s.elements_of(a.quotient)));
  } else if (c == "check rees") {
    o.result = criterion_json(rees_equivalence_check(s.module(a.umodule), single(), a.nmax, xo));
  } else if (c == "check converse") {
    o.result = criterion_json(converse_criterion(s.elements_of(a.elements), s.modules_of(a.modules), a.nmax, xo));
  } else if (c == "check risler") {
    RislerTeissierOptions ro;
    ro.attempts = a.attempts;
    ro.extract = xo;
    o.result = criterion_json(risler_teissier_check(s.modules_of(a.modules), a.dvec, a.seed, ro));
    o.seed = a.seed;
  } else {
    fail(ErrorKind::InvalidInput, "unknown command '" + c + "'");
  }
  return o;
}

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("spec", a.specfile, "spec file (JSON)")->required();
  sub->add_option("--threads", a.threads, "worker threads for length tables");
}

void configure(CLI::App& app, Args& a) {
  app.require_subcommand(1);
  auto mods = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("-m,--modules", a.modules, "module names")->delimiter(',');
    if (required) o->required();
  };

  auto* len = app.add_subcommand("length", "l(M_(e.n+q) / E^n M_q)");
  add_common(len, a);
  mods(len);
  len->add_option("-n", a.n, "exponents")->delimiter(',')->required();
  len->add_option("-q", a.q, "ambient degree offset");
  len->add_option("--quot", a.quotient, "elements to quotient by")->delimiter(',');

  for (const char* name : {"ebr", "tilde-ebr"}) {
    auto* s = app.add_subcommand(name, name == std::string("ebr") ? "Buchsbaum-Rim multiplicity" : "higher-degree multiplicity");
    add_common(s, a);
    mods(s);
  }
  auto* mx = app.add_subcommand("mixed", "mixed multiplicity");
  add_common(mx, a);
  mods(mx);
  mx->add_option("-d", a.dvec, "type vector")->delimiter(',')->required();
  auto* as = app.add_subcommand("assoc", "associated mixed multiplicity");
  add_common(as, a);
  mods(as);
  as->add_option("-d", a.dvec, "type vector")->delimiter(',')->required();
  as->add_option("-j", a.j, "q-degree of the coefficient")->required();

  auto* gm = app.add_subcommand("gmult", "Koszul g-multiplicity e_t");
  add_common(gm, a);
  gm->add_option("-e,--elements", a.elements, "element names")->delimiter(',')->required();
  gm->add_option("-t", a.t, "t-degree (default 2 sum k_i + d + p)");

  auto* ck = app.add_subcommand("check", "reduction and joint-reduction deciders");
  ck->require_subcommand(1);
  auto* red = ck->add_subcommand("reduction", "is U a reduction of E");
  add_common(red, a);
  red->add_option("-u", a.umodule, "candidate reduction")->required();
  mods(red);
  red->add_option("--nmax", a.nmax);
  auto* jt = ck->add_subcommand("joint", "is (x_1..x_k) a joint reduction");
  add_common(jt, a);
  jt->add_option("-x", a.elements, "element names")->delimiter(',')->required();
  mods(jt);
  jt->add_option("--nmax", a.nmax);
  jt->add_option("--qmax", a.qmax);
  auto* sp = ck->add_subcommand("superficial", "is x superficial for (E_1..E_k)");
  add_common(sp, a);
  sp->add_option("-x", a.element, "element name")->required();
  mods(sp);
  sp->add_option("--quot", a.quotient, "elements already chosen")->delimiter(',');
  auto* rs = ck->add_subcommand("rees", "Rees' theorem: reduction vs multiplicity equality");
  add_common(rs, a);
  rs->add_option("-u", a.umodule, "candidate reduction")->required();
  mods(rs);
  rs->add_option("--nmax", a.nmax);
  auto* cv = ck->add_subcommand("converse", "multiplicity equality vs joint reduction");
  add_common(cv, a);
  cv->add_option("-x", a.elements, "element names")->delimiter(',')->required();
  mods(cv);
  cv->add_option("--nmax", a.nmax);
  auto* rt = ck->add_subcommand("risler", "mixed multiplicity vs a sampled superficial sequence");
  add_common(rt, a);
  mods(rt);
  rt->add_option("-d", a.dvec, "type vector")->delimiter(',')->required();
  rt->add_option("--seed", a.seed);
  rt->add_option("--attempts", a.attempts);
}

std::string command_name(const CLI::App& app) {
  for (const auto* s : app.get_subcommands()) {
    std::string name = s->get_name();
    for (const auto* s2 : s->get_subcommands()) name += " " + s2->get_name();
    return name;
  }
  return {};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CacheConfig& cache) {
  Args a;
  CLI::App app{"brim: Buchsbaum-Rim and mixed multiplicities"};
  app.name("brim");
  configure(app, a);

  std::vector<std::string> storage{"brim"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }
  a.command = command_name(app);

  auto t0 = std::chrono::steady_clock::now();
  json report;
  report["command"] = echo(a);
  int code = 0;
  try {
    require(a.threads >= 1, ErrorKind::InvalidInput, "--threads must be >= 1");
    json doc = read_spec(a.specfile);
    PolyRing r = parse_ring(doc);
    std::string canonical = doc.dump() + "\n" + report["command"].dump();
    std::string key = sha256_hex(canonical);
    report["inputs_hash"] = key;
    Outcome o;
    try {
      if (r.field.kind == FieldSpec::Kind::Rationals)
        o = execute(a, build_spec<Rational>(doc, r), cache, key);
      else
        o = execute(a, build_spec<Modular>(doc, r), cache, key);
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("malformed spec: ") + e.what());
    }
    report["result"] = o.result;
    report["seed"] = o.seed;
    report["timing"]["cache"] = o.cache;
  } catch (const Error& e) {
    code = exit_code(e.kind());
    report["error"] = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
    err << "brim: " << e.what() << '\n';
  } catch (const std::exception& e) {
    code = 4;
    report["error"] = {{"kind", "Internal"}, {"message", e.what()}};
    err << "brim: internal error: " << e.what() << '\n';
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  report["timing"]["wall_ms"] = std::round(ms * 1000.0) / 1000.0;
  out << report.dump(2) << '\n';
  return code;
}

}  // namespace brim::cli
