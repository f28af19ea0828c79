#include "f2curves/corpus.hpp"
#include "f2curves/genusbounds.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace f2c {

namespace {

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::int64_t to_int(const std::string& v, const std::string& where) {
  try {
    std::size_t used = 0;
    const auto n = std::stoll(v, &used);
    if (used == v.size()) return n;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument(where + ": expected an integer, got '" + v + "'");
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
  std::vector<CorpusEntry> out;
  std::set<std::string> seen_keys;
  std::set<std::string> ids;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  auto finish = [&] {
    if (out.empty()) return;
    const auto& e = out.back();
    for (const char* key : {"field", "poly", "smooth", "genus", "n_lower"})
      if (!seen_keys.count(key)) throw std::invalid_argument("corpus entry " + e.id + " lacks " + key);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::string where = "corpus line " + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where + ": unterminated entry header");
      finish();
      CorpusEntry e;
      e.id = trim(line.substr(1, line.size() - 2));
      if (e.id.empty() || !ids.insert(e.id).second) throw std::invalid_argument(where + ": empty or duplicate id");
      out.push_back(std::move(e));
      seen_keys.clear();
      continue;
    }
    if (out.empty()) throw std::invalid_argument(where + ": key outside an entry");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto& e = out.back();
    if (key != "singular" && !seen_keys.insert(key).second)
      throw std::invalid_argument(where + ": repeated key " + key);
    if (key == "field") {
      e.q = static_cast<std::uint32_t>(to_int(value, where));
      field_degree_of(e.q);
    } else if (key == "poly") {
      try {
        e.f = parse_any(value);
      } catch (const std::exception& ex) {
        throw std::invalid_argument(where + ": " + ex.what());
      }
      if (is_trivially_reducible(e.f)) throw std::invalid_argument(where + ": trivially reducible polynomial");
    } else if (key == "smooth") {
      e.smooth = to_int(value, where);
    } else if (key == "genus") {
      e.genus = static_cast<int>(to_int(value, where));
    } else if (key == "n_lower") {
      e.n_lower = to_int(value, where);
    } else if (key == "singular") {
      const auto close = value.find(')');
      if (value.empty() || value.front() != '(' || close == std::string::npos)
        throw std::invalid_argument(where + ": expected '(x:y:z) type'");
      e.singular.emplace_back(value.substr(0, close + 1), trim(value.substr(close + 1)));
    } else {
      throw std::invalid_argument(where + ": unknown key " + key);
    }
  }
  finish();
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus(ss.str());
}

std::vector<CorpusEntry> load_corpus() { return load_corpus(data_dir() / "corpus.txt"); }

std::size_t CorpusReport::failures() const noexcept {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
}

namespace {

std::vector<CorpusCheck> check_entry(const CorpusEntry& e, const AnalysisOptions& options) {
  std::vector<CorpusCheck> out;
  auto add = [&](std::string what, bool pass, std::string detail) {
    out.push_back({e.id, std::move(what), pass, std::move(detail)});
  };
  CurveRecord r;
  try {
    r = verify(e.f, e.q, options);
  } catch (const std::exception& ex) {
    add("verify", false, ex.what());
    return out;
  }
  const FieldRecord& fr = r.fields.front();
  add("smooth", static_cast<std::int64_t>(fr.smooth) == e.smooth,
      "got " + std::to_string(fr.smooth) + ", expected " + std::to_string(e.smooth));
  add("genus", r.genus.lo <= e.genus && e.genus <= r.genus.hi,
      "interval [" + std::to_string(r.genus.lo) + ", " + std::to_string(r.genus.hi) + "], expected " +
          std::to_string(e.genus));
  for (const auto& [pt, type] : e.singular) {
    const auto it = std::find_if(fr.singular.begin(), fr.singular.end(),
                                 [&](const SingularEntry& s) { return point_text(s.point.point) == pt; });
    if (it == fr.singular.end()) {
      add("singular " + pt, false, "not a singular point");
    } else {
      add("singular " + pt, it->point.type == type, "type '" + it->point.type + "', expected '" + type + "'");
    }
  }
  add("n_lower", fr.model.n_lo >= e.n_lower,
      "N_lo " + std::to_string(fr.model.n_lo) + ", expected at least " + std::to_string(e.n_lower));
  const auto& irr = r.irreducibility;
  add("absolute", irr.absolute == Absolute::yes && irr.certificate_field <= 3,
      to_string(irr.absolute) + " over k=" + std::to_string(irr.certificate_field));
  return out;
}

}  // namespace

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, unsigned jobs, const AnalysisOptions& options) {
  std::vector<std::vector<CorpusCheck>> per_entry(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < entries.size();) per_entry[i] = check_entry(entries[i], options);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < std::max(1u, jobs); ++w) pool.emplace_back(work);
    work();
  }
  CorpusReport report;
  for (auto& v : per_entry) report.checks.insert(report.checks.end(), v.begin(), v.end());
  return report;
}

}  // namespace f2c
