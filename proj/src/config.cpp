#include "critcurve/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "critcurve/error.hpp"
#include "critcurve/grid.hpp"
#include "critcurve/test_function.hpp"

namespace critcurve {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::simulate: return "simulate";
    case Mode::sweep: return "sweep";
    case Mode::linear_decay: return "linear-decay";
    case Mode::blowup_scan: return "blowup-scan";
    case Mode::ineq_check: return "ineq-check";
    case Mode::rates: return "rates";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::simulate, Mode::sweep, Mode::linear_decay, Mode::blowup_scan, Mode::ineq_check, Mode::rates})
    if (to_string(m) == name) return m;
  fail(fmt::format("unknown mode '{}'; expected simulate, sweep, linear-decay, blowup-scan, ineq-check or rates", name));
}

std::string_view to_string(Proposition p) {
  switch (p) {
    case Proposition::gagliardo_nirenberg: return "gagliardo_nirenberg";
    case Proposition::fractional_powers: return "fractional_powers";
    case Proposition::embedding: return "embedding";
    case Proposition::chain_rule: return "chain_rule";
  }
  return "unknown";
}

std::pair<double, double> RunConfig::window() const {
  return fit_window.value_or(std::pair{time.t_max / 5.0, time.t_max});
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

namespace {

const std::map<std::string, std::vector<std::string>, std::less<>>& schema() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> s = {
      {"run", {"mode", "seed", "jobs", "out", "svg"}},
      {"grid", {"half_length", "points"}},
      {"system", {"n", "p", "q", "eps", "s", "eps_loss", "nonlinear"}},
      {"data", {"a_u0", "a_u1", "a_v0", "a_v1", "width", "blowup_admissible"}},
      {"time", {"t_max", "h", "sample_every", "blowup_threshold", "rescue", "fit_window"}},
      {"sweep", {"p_list", "q_list", "decay_slope_max", "band_fraction"}},
      {"linear", {"samples"}},
      {"blowup", {"R_list", "kappa"}},
      {"ineq", {"proposition", "count", "band_limit", "decay", "theta", "a", "p", "p0", "p1", "s", "r", "r1", "r2",
                "q", "s1", "s2"}},
  };
  return s;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string nearest(std::string_view word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(word, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Document = std::map<std::string, std::map<std::string, Entry, std::less<>>, std::less<>>;

Document tokenize(std::string_view text) {
  Document doc;
  std::string section;
  bool seen_format = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    auto where = [&] { return fmt::format("line {}", line_no); };
    if (!seen_format) {
      const auto eq = line.find('=');
      require(eq != std::string_view::npos && trim(line.substr(0, eq)) == "format",
              fmt::format("{}: the document must start with 'format = {}'", where(), kConfigFormat));
      require(trim(line.substr(eq + 1)) == kConfigFormat,
              fmt::format("{}: unsupported format '{}', expected '{}'", where(), trim(line.substr(eq + 1)),
                          kConfigFormat));
      seen_format = true;
      continue;
    }
    if (line.front() == '[') {
      require(line.back() == ']', fmt::format("{}: malformed section header", where()));
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().contains(section)) {
        std::vector<std::string> names;
        for (const auto& [k, _] : schema()) names.push_back(k);
        fail(fmt::format("{}: unknown section [{}]; did you mean [{}]?", where(), section, nearest(section, names)));
      }
      require(!doc.contains(section), fmt::format("{}: section [{}] appears twice", where(), section));
      doc[section];
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string_view::npos, fmt::format("{}: expected 'key = value'", where()));
    require(!section.empty(), fmt::format("{}: key outside any section", where()));
    const std::string key(trim(line.substr(0, eq)));
    const auto& known = schema().find(section)->second;
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(fmt::format("{}: unknown key '{}' in [{}]; nearest known key is '{}'", where(), key, section,
                       nearest(key, known)));
    auto& entries = doc[section];
    require(!entries.contains(key), fmt::format("{}: key '{}' repeated in [{}]", where(), key, section));
    entries[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  require(seen_format, fmt::format("empty document; expected 'format = {}'", kConfigFormat));
  return doc;
}

class Reader {
 public:
  explicit Reader(Document doc) : doc_(std::move(doc)) {}

  const Entry* find(std::string_view section, std::string_view key) {
    const auto s = doc_.find(section);
    if (s == doc_.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    used_.insert(fmt::format("{}.{}", section, key));
    return &k->second;
  }

  bool has(std::string_view section, std::string_view key) const {
    const auto s = doc_.find(section);
    return s != doc_.end() && s->second.contains(key);
  }

  const Entry& need(std::string_view section, std::string_view key) {
    const Entry* e = find(section, key);
    require(e != nullptr, fmt::format("missing required key '{}' in [{}]", key, section));
    return *e;
  }

  static double to_double(const Entry& e, std::string_view key) {
    double v = 0.0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    const auto [ptr, ec] = std::from_chars(b, end, v);
    require(ec == std::errc() && ptr == end && std::isfinite(v),
            fmt::format("line {}: '{}' expects a number, got '{}'", e.line, key, e.value));
    return v;
  }

  static long long to_integer(const Entry& e, std::string_view key) {
    long long v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    const auto [ptr, ec] = std::from_chars(b, end, v);
    require(ec == std::errc() && ptr == end, fmt::format("line {}: '{}' expects an integer, got '{}'", e.line, key, e.value));
    return v;
  }

  static std::vector<double> to_list(const Entry& e, std::string_view key) {
    std::string s = e.value;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<double> out;
    for (std::string tok; in >> tok;) out.push_back(to_double(Entry{tok, e.line}, key));
    require(!out.empty(), fmt::format("line {}: '{}' expects a non-empty list", e.line, key));
    return out;
  }

  static bool to_bool(const Entry& e, std::string_view key) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    fail(fmt::format("line {}: '{}' expects true or false, got '{}'", e.line, key, e.value));
  }

  void number(std::string_view section, std::string_view key, double& out) {
    if (const Entry* e = find(section, key)) out = to_double(*e, key);
  }
  template <class Int>
  void integer(std::string_view section, std::string_view key, Int& out) {
    if (const Entry* e = find(section, key)) out = static_cast<Int>(to_integer(*e, key));
  }
  void boolean(std::string_view section, std::string_view key, bool& out) {
    if (const Entry* e = find(section, key)) out = to_bool(*e, key);
  }

  /// Keys present but not consumed for the selected mode.
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (const auto& [section, entries] : doc_)
      for (const auto& [key, _] : entries)
        if (!used_.contains(fmt::format("{}.{}", section, key))) out.push_back(fmt::format("{}.{}", section, key));
    return out;
  }

 private:
  Document doc_;
  std::set<std::string> used_;
};

void read_system(Reader& r, RunConfig& c, bool needs_pq, bool needs_eps) {
  c.system.n = static_cast<int>(Reader::to_integer(r.need("system", "n"), "n"));
  if (needs_pq) {
    c.system.p = Reader::to_double(r.need("system", "p"), "p");
    c.system.q = Reader::to_double(r.need("system", "q"), "q");
  }
  if (needs_eps) c.system.eps = Reader::to_double(r.need("system", "eps"), "eps");
  r.number("system", "s", c.system.s);
  r.number("system", "eps_loss", c.system.eps_loss);
  r.boolean("system", "nonlinear", c.system.nonlinear);
  auto& d = c.system.data;
  r.number("data", "a_u0", d.a_u0);
  r.number("data", "a_u1", d.a_u1);
  r.number("data", "a_v0", d.a_v0);
  r.number("data", "a_v1", d.a_v1);
  r.number("data", "width", d.width);
  r.boolean("data", "blowup_admissible", d.blowup_admissible);
}

void read_grid(Reader& r, RunConfig& c) {
  c.half_length = Reader::to_double(r.need("grid", "half_length"), "half_length");
  c.points = static_cast<int>(Reader::to_integer(r.need("grid", "points"), "points"));
  require(c.half_length > 0.0, "half_length must be positive");
  require(c.points >= 8 && (c.points & (c.points - 1)) == 0, "points must be a power of two at least 8");
}

void read_time(Reader& r, RunConfig& c, bool needs_t_max) {
  if (needs_t_max) c.time.t_max = Reader::to_double(r.need("time", "t_max"), "t_max");
  r.number("time", "h", c.time.h);
  r.integer("time", "sample_every", c.time.sample_every);
  r.number("time", "blowup_threshold", c.time.blowup_threshold);
  r.boolean("time", "rescue", c.time.rescue);
  if (const Entry* e = r.find("time", "fit_window")) {
    const auto w = Reader::to_list(*e, "fit_window");
    require(w.size() == 2 && w[0] < w[1], "fit_window needs two increasing times");
    c.fit_window = std::pair{w[0], w[1]};
  }
  require(c.time.t_max > 0.0, "t_max must be positive");
  require(c.time.h > 0.0, "step size h must be positive");
  require(c.time.sample_every >= 1, "sample_every must be at least 1");
  require(c.time.blowup_threshold > 0.0, "blowup_threshold must be positive");
}

void read_ineq(Reader& r, RunConfig& c) {
  const Entry& prop = r.need("ineq", "proposition");
  std::vector<std::string> keys;
  if (prop.value == "gagliardo_nirenberg") {
    c.proposition = Proposition::gagliardo_nirenberg;
    keys = {"theta", "a", "p", "p0", "p1"};
    r.number("ineq", "theta", c.gn.theta);
    r.number("ineq", "a", c.gn.a);
    r.number("ineq", "p", c.gn.p);
    r.number("ineq", "p0", c.gn.p0);
    r.number("ineq", "p1", c.gn.p1);
    c.gn.validate(c.system.n);
  } else if (prop.value == "fractional_powers") {
    c.proposition = Proposition::fractional_powers;
    FractionalPowerParams fp;
    r.number("ineq", "p", fp.p);
    r.number("ineq", "s", fp.s);
    r.number("ineq", "r", fp.r);
    c.aux = fp;
  } else if (prop.value == "embedding") {
    c.proposition = Proposition::embedding;
    EmbeddingParams em;
    r.number("ineq", "q", em.q);
    r.number("ineq", "s1", em.s1);
    r.number("ineq", "s2", em.s2);
    c.aux = em;
  } else if (prop.value == "chain_rule") {
    c.proposition = Proposition::chain_rule;
    ChainRuleParams cr;
    r.number("ineq", "p", cr.p);
    r.number("ineq", "s", cr.s);
    r.number("ineq", "r", cr.r);
    r.number("ineq", "r1", cr.r1);
    r.number("ineq", "r2", cr.r2);
    c.aux = cr;
  } else {
    fail(fmt::format("line {}: unknown proposition '{}'; expected gagliardo_nirenberg, fractional_powers, "
                     "embedding or chain_rule",
                     prop.line, prop.value));
  }
  if (c.proposition != Proposition::gagliardo_nirenberg) validate(c.aux, c.system.n);
  r.integer("ineq", "count", c.samples.count);
  r.number("ineq", "band_limit", c.samples.band_limit);
  r.number("ineq", "decay", c.samples.decay);
  c.samples.seed = c.seed;
  c.samples.validate();
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  Reader r(tokenize(text));
  RunConfig c;
  c.config_hash = config_hash(text);
  c.mode = parse_mode(r.need("run", "mode").value);
  r.integer("run", "seed", c.seed);
  r.integer("run", "jobs", c.jobs);
  r.boolean("run", "svg", c.svg);
  if (const Entry* e = r.find("run", "out")) c.out_dir = e->value;
  require(c.jobs >= 1, "jobs must be at least 1");

  switch (c.mode) {
    case Mode::rates:
      read_system(r, c, true, false);
      require(c.system.n == 1 || c.system.n == 2, "rates are tabulated for n = 1 and n = 2 only");
      break;
    case Mode::simulate:
      read_system(r, c, true, true);
      read_grid(r, c);
      read_time(r, c, true);
      break;
    case Mode::sweep: {
      read_system(r, c, false, true);
      read_grid(r, c);
      read_time(r, c, true);
      c.p_list = Reader::to_list(r.need("sweep", "p_list"), "p_list");
      c.q_list = Reader::to_list(r.need("sweep", "q_list"), "q_list");
      for (double p : c.p_list) require(p > 1.0, fmt::format("p must exceed 1 (min{{p,q}} > 1), got {}", p));
      for (double q : c.q_list) require(q > 1.0, fmt::format("q must exceed 1 (min{{p,q}} > 1), got {}", q));
      r.number("sweep", "decay_slope_max", c.decay_slope_max);
      r.number("sweep", "band_fraction", c.band_fraction);
      require(c.band_fraction >= 0.0, "band_fraction must be non-negative");
      // Cell exponents replace p and q; keep the base parameters valid.
      c.system.p = c.p_list.front();
      c.system.q = c.q_list.front();
      break;
    }
    case Mode::linear_decay:
      read_system(r, c, false, false);
      read_grid(r, c);
      read_time(r, c, true);
      r.integer("linear", "samples", c.linear_samples);
      require(c.linear_samples >= 10, "linear samples must be at least 10");
      break;
    case Mode::blowup_scan: {
      read_system(r, c, true, true);
      read_grid(r, c);
      read_time(r, c, false);
      c.R_list = Reader::to_list(r.need("blowup", "R_list"), "R_list");
      for (double R : c.R_list) require(R >= 1.0, "every R must be at least 1");
      r.integer("blowup", "kappa", c.kappa);
      if (c.kappa != 0) {
        const int floor = minimal_kappa(c.system.p, c.system.q);
        require(c.kappa >= floor, fmt::format("kappa must be at least ceil(2 max(p', q')) = {}", floor));
      }
      const double r_max = *std::max_element(c.R_list.begin(), c.R_list.end());
      require(c.half_length > r_max, "grid half_length must exceed max(R_list)");
      c.time.t_max = r_max * r_max;
      break;
    }
    case Mode::ineq_check:
      c.system.n = static_cast<int>(Reader::to_integer(r.need("system", "n"), "n"));
      read_grid(r, c);
      read_ineq(r, c);
      break;
  }
  c.system.validate();
  require(c.mode == Mode::rates || c.mode == Mode::ineq_check || c.system.n == 1 || c.system.n == 2,
          "evolution dimension must be 1 or 2");
  if (c.mode == Mode::ineq_check) require(c.system.n == 1 || c.system.n == 2, "grids exist for n = 1 and n = 2 only");

  const auto unused = r.unused();
  if (!unused.empty())
    fail(fmt::format("key '{}' is not used by mode {}; remove it", unused.front(), to_string(c.mode)));
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), fmt::format("cannot open config '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace critcurve
