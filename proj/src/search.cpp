#include "f2curves/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace f2c {

// ---------------------------------------------------------------------------
// Configuration

void SearchConfig::validate() const {
  if (degree < 1 || degree > kMaxDegree) throw ConfigError("degree must be in 1..6");
  if (fields.empty()) throw ConfigError("at least one field is required");
  for (auto q : fields) {
    if (q < 8 || q > 2048 || !std::has_single_bit(q))
      throw ConfigError("field " + std::to_string(q) + " is not one of 8, 16, ..., 2048");
  }
  if (threshold < 0) throw ConfigError("threshold must be nonnegative");
  if (min_genus < 0) throw ConfigError("min_genus must be nonnegative");
  if (jobs == 0) throw ConfigError("jobs must be positive");
  if (checkpoint_interval < 0) throw ConfigError("checkpoint interval must be nonnegative");
}

std::vector<std::uint32_t> SearchConfig::normalized_fields() const {
  std::set<std::uint32_t> s(fields.begin(), fields.end());
  return {s.begin(), s.end()};
}

std::uint32_t SearchConfig::effective_batch_size() const {
  if (batch_size != 0) return batch_size;
  // About 64 ranges per run, at least 2^12 masks each.
  const int bits = monomial_count(degree);
  return std::uint32_t{1} << std::max(12, bits - 6);
}

namespace {

struct Fnv {
  std::uint64_t h = 1469598103934665603ull;
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ull;
    }
  }
  void text(const std::string& s) { bytes(s.data(), s.size()); }
};

}  // namespace

std::uint64_t config_hash(const SearchConfig& cfg, const BoundTable& bounds) {
  std::ostringstream s;
  s << "degree=" << cfg.degree << ";fields=";
  for (auto q : cfg.normalized_fields()) s << q << ",";
  s << ";threshold=" << cfg.threshold << ";min_genus=" << cfg.min_genus
    << ";batch=" << cfg.effective_batch_size() << ";bounds=";
  for (const auto& [key, b] : bounds.entries()) s << key.first << "," << key.second << "," << b << ";";
  Fnv f;
  f.text(s.str());
  return f.h;
}

// ---------------------------------------------------------------------------
// Checkpoint file
//
// Little-endian: "F2CKPT01", u32 version, u32 degree, u64 config hash,
// u64 position, 5 x u64 sieve stats, u64 candidates, u64 word count, words,
// u64 entry count, per entry u32 mask + u32 length + bytes, then an FNV-1a
// checksum of everything before it.

namespace {

constexpr char kMagic[8] = {'F', '2', 'C', 'K', 'P', 'T', '0', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  template <class T>
  void put(T v) {
    static_assert(std::is_integral_v<T>);
    unsigned char b[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<unsigned char>(static_cast<std::uint64_t>(v) >> (8 * i));
    buf.append(reinterpret_cast<const char*>(b), sizeof(T));
  }
  void raw(const void* p, std::size_t n) { buf.append(static_cast<const char*>(p), n); }
  std::string buf;
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}
  template <class T>
  T get() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{static_cast<unsigned char>(s_[pos_ + i])} << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::string raw(std::size_t n) {
    need(n);
    std::string out = s_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t position() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return s_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (s_.size() - pos_ < n) throw CheckpointError("checkpoint is truncated");
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(kVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(ck.degree));
  w.put<std::uint64_t>(ck.config_hash);
  w.put<std::uint64_t>(ck.position);
  for (auto v : {ck.stats.orbits, ck.stats.emitted, ck.stats.skipped_orbits, ck.stats.masks_covered,
                 ck.stats.skipped_masks})
    w.put<std::uint64_t>(v);
  w.put<std::uint64_t>(ck.candidates);
  w.put<std::uint64_t>(ck.words.size());
  for (auto word : ck.words) w.put<std::uint64_t>(word);
  w.put<std::uint64_t>(ck.catalog.size());
  for (const auto& e : ck.catalog) {
    w.put<std::uint32_t>(e.mask);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(e.line.size()));
    w.raw(e.line.data(), e.line.size());
  }
  Fnv f;
  f.text(w.buf);
  w.put<std::uint64_t>(f.h);

  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp.string());
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError("cannot replace checkpoint " + path.string() + ": " + ec.message());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  if (data.size() < sizeof kMagic + 8 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0)
    throw CheckpointError("not a checkpoint file: " + path.string());

  const std::string body = data.substr(0, data.size() - 8);
  Fnv f;
  f.text(body);
  Reader tail(data);
  tail.raw(data.size() - 8);
  if (tail.get<std::uint64_t>() != f.h) throw CheckpointError("checkpoint checksum mismatch");

  Reader r(body);
  r.raw(sizeof kMagic);
  if (r.get<std::uint32_t>() != kVersion) throw CheckpointError("unsupported checkpoint version");
  Checkpoint ck;
  ck.degree = static_cast<int>(r.get<std::uint32_t>());
  if (ck.degree < 1 || ck.degree > kMaxDegree) throw CheckpointError("checkpoint degree out of range");
  ck.config_hash = r.get<std::uint64_t>();
  ck.position = r.get<std::uint64_t>();
  ck.stats.orbits = r.get<std::uint64_t>();
  ck.stats.emitted = r.get<std::uint64_t>();
  ck.stats.skipped_orbits = r.get<std::uint64_t>();
  ck.stats.masks_covered = r.get<std::uint64_t>();
  ck.stats.skipped_masks = r.get<std::uint64_t>();
  ck.candidates = r.get<std::uint64_t>();
  const auto nwords = r.get<std::uint64_t>();
  const std::uint64_t expected = std::max<std::uint64_t>(1, (std::uint64_t{1} << monomial_count(ck.degree)) / 64);
  if (nwords != expected || r.remaining() / 8 < nwords) throw CheckpointError("checkpoint table length mismatch");
  ck.words.resize(nwords);
  for (auto& word : ck.words) word = r.get<std::uint64_t>();
  const auto nentries = r.get<std::uint64_t>();
  if (nentries > r.remaining() / 8) throw CheckpointError("checkpoint catalog length mismatch");
  for (std::uint64_t i = 0; i < nentries; ++i) {
    CatalogEntry e;
    e.mask = r.get<std::uint32_t>();
    e.line = r.raw(r.get<std::uint32_t>());
    ck.catalog.push_back(std::move(e));
  }
  if (r.remaining() != 0) throw CheckpointError("trailing bytes in checkpoint");
  if (ck.position > (std::uint64_t{1} << monomial_count(ck.degree)))
    throw CheckpointError("checkpoint position out of range");
  return ck;
}

// ---------------------------------------------------------------------------
// Pipeline

bool meets_threshold(const CurveRecord& r, std::int64_t threshold, int min_genus, const BoundTable& bounds) {
  if (r.irreducibility.absolute == Absolute::reducible) return false;
  if (!r.genus.consistent()) return false;
  for (const auto& fr : r.fields) {
    for (int g = std::max(r.genus.lo, min_genus); g <= r.genus.hi; ++g)
      if (fr.model.n_lo >= effective_bound(fr.q, g, bounds).value - threshold) return true;
  }
  return false;
}

namespace {

// Count-only test, a superset of meets_threshold: S + (multiplicities of the
// rational singular points) bounds N_lo from above, and the genus can only
// lie in [lo, plane genus].
bool prefilter(const PolyMask& f, const std::vector<const PointCount*>& counts, std::int64_t threshold,
               int min_genus, const BoundTable& bounds) {
  int lo = 0;
  for (const auto* c : counts) lo = std::max(lo, genus_lower_bound(c->q, static_cast<std::int64_t>(c->smooth), &bounds));
  const int hi = plane_genus(f.degree);
  for (const auto* c : counts) {
    const FieldTable& F = field(field_degree_of(c->q));
    std::int64_t n = static_cast<std::int64_t>(c->smooth);
    for (const auto& p : c->singular_points) n += multiplicity_at(f, F, p);
    for (int g = std::max(lo, min_genus); g <= hi; ++g)
      if (n >= effective_bound(c->q, g, bounds).value - threshold) return true;
  }
  return false;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
}

std::vector<OrbitInfo> sieve_batch(SieveTable& table, std::uint32_t begin, std::uint32_t end, unsigned jobs,
                                   SieveStats& stats) {
  const unsigned shards = std::max(1u, jobs);
  std::vector<std::vector<OrbitInfo>> parts(shards);
  std::vector<SieveStats> part_stats(shards);
  const std::uint64_t len = end - begin;
  parallel_for(shards, jobs, [&](std::size_t s) {
    const auto lo = static_cast<std::uint32_t>(begin + len * s / shards);
    const auto hi = static_cast<std::uint32_t>(begin + len * (s + 1) / shards);
    parts[s] = sieve_range(table, lo, hi, part_stats[s]);
  });
  std::vector<OrbitInfo> out;
  for (std::size_t s = 0; s < shards; ++s) {
    stats += part_stats[s];
    out.insert(out.end(), parts[s].begin(), parts[s].end());
  }
  return out;
}

}  // namespace

SearchResult run_search(const SearchConfig& cfg, const std::function<void(const SearchProgress&)>& progress) {
  cfg.validate();
  BoundTable loaded;
  const BoundTable* bounds_ptr = &BoundTable::shipped();
  if (!cfg.lauter_path.empty()) {
    try {
      loaded = BoundTable::load(cfg.lauter_path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    bounds_ptr = &loaded;
  }
  const BoundTable& bounds = *bounds_ptr;
  const auto fields = cfg.normalized_fields();
  const auto hash = config_hash(cfg, bounds);

  SieveTable table(cfg.degree);
  SearchResult result;
  std::uint64_t position = 0;
  const std::uint64_t end = table.bit_count();

  if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
    Checkpoint ck = load_checkpoint(cfg.checkpoint_path);
    if (ck.degree != cfg.degree || ck.config_hash != hash)
      throw CheckpointError("checkpoint " + cfg.checkpoint_path.string() + " belongs to a different configuration");
    table.assign_words(ck.words);
    position = ck.position;
    result.stats = ck.stats;
    result.candidates = ck.candidates;
    result.catalog = std::move(ck.catalog);
    result.resumed = true;
  }

  auto save = [&] {
    if (cfg.checkpoint_path.empty()) return;
    Checkpoint ck;
    ck.degree = cfg.degree;
    ck.config_hash = hash;
    ck.position = position;
    ck.stats = result.stats;
    ck.candidates = result.candidates;
    ck.words.assign(table.words().begin(), table.words().end());
    ck.catalog = result.catalog;
    save_checkpoint(cfg.checkpoint_path, ck);
  };

  const std::uint32_t batch = cfg.effective_batch_size();
  AnalysisOptions options;
  options.bounds = &bounds;
  std::uint64_t batches = 0;
  auto last_save = std::chrono::steady_clock::now();

  while (position < end) {
    const auto b_end = std::min<std::uint64_t>(position + batch, end);
    auto infos = sieve_batch(table, static_cast<std::uint32_t>(position), static_cast<std::uint32_t>(b_end), cfg.jobs,
                             result.stats);

    std::vector<PolyMask> reps;
    reps.reserve(infos.size());
    for (const auto& o : infos) reps.push_back(o.representative);
    std::vector<std::vector<PointCount>> counts;  // [field][curve]
    for (auto q : fields) counts.push_back(count_points_batch(reps, field(field_degree_of(q)), cfg.jobs));

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::vector<const PointCount*> cs;
      for (const auto& per_field : counts) cs.push_back(&per_field[i]);
      if (prefilter(reps[i], cs, cfg.threshold, cfg.min_genus, bounds)) candidates.push_back(i);
    }
    result.candidates += candidates.size();

    std::vector<std::optional<CatalogEntry>> kept(candidates.size());
    parallel_for(candidates.size(), cfg.jobs, [&](std::size_t c) {
      const std::size_t i = candidates[c];
      std::vector<PointCount> cs;
      for (const auto& per_field : counts) cs.push_back(per_field[i]);
      CurveRecord r = build_record(reps[i], infos[i].orbit_size, std::move(cs), options);
      if (meets_threshold(r, cfg.threshold, cfg.min_genus, bounds)) kept[c] = CatalogEntry{r.f.bits, to_catalog_line(r)};
    });
    for (auto& k : kept)
      if (k) result.catalog.push_back(std::move(*k));

    position = b_end;
    ++batches;
    if (progress)
      progress({position, end, result.stats.orbits, result.candidates, static_cast<std::uint64_t>(result.catalog.size())});

    const bool stop = cfg.stop_after_batches != 0 && batches >= cfg.stop_after_batches && position < end;
    const auto now = std::chrono::steady_clock::now();
    if (stop || std::chrono::duration<double>(now - last_save).count() >= cfg.checkpoint_interval) {
      save();
      last_save = now;
    }
    if (stop) break;
  }

  std::sort(result.catalog.begin(), result.catalog.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.mask < b.mask; });
  result.complete = position >= end;
  if (result.complete) save();
  return result;
}

void write_catalog(std::ostream& out, const std::vector<CatalogEntry>& catalog) {
  for (const auto& e : catalog) out << e.line << '\n';
}

std::vector<Json> read_catalog(std::istream& in) {
  std::vector<Json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Json> read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open catalog " + path.string());
  return read_catalog(in);
}

// ---------------------------------------------------------------------------
// Tallies

const TallyCell* Tally::cell(std::uint32_t q, int g) const noexcept {
  for (const auto& c : cells)
    if (c.q == q && c.g == g) return &c;
  return nullptr;
}

Tally make_tally(const std::vector<CatalogSummary>& catalog, const BoundTable& bounds, int g_min, int g_max) {
  if (catalog.empty()) throw std::invalid_argument("cannot tally an empty catalog");
  std::set<std::uint32_t> qs;
  for (const auto& s : catalog)
    for (const auto& f : s.fields) qs.insert(f.q);

  Tally t;
  std::map<std::pair<std::uint32_t, int>, std::size_t> index;
  for (auto q : qs)
    for (int g = g_min; g <= g_max; ++g) {
      index[{q, g}] = t.cells.size();
      t.cells.push_back({q, g, std::nullopt, "", effective_bound(q, g, bounds)});
    }

  for (const auto& s : catalog) {
    if (s.absolute == "reducible" || !s.genus.consistent()) continue;
    if (!s.genus.pinned()) {
      t.ambiguous.push_back(s);
      continue;
    }
    for (const auto& f : s.fields) {
      auto it = index.find({f.q, s.genus.lo});
      if (it == index.end()) continue;
      auto& c = t.cells[it->second];
      if (!c.best || f.n_lo > *c.best) {
        c.best = f.n_lo;
        c.best_mask = to_hex(s.f);
      }
    }
  }
  return t;
}

std::string format_tally(const Tally& t) {
  std::ostringstream out;
  out << std::left << std::setw(6) << "q" << std::setw(4) << "g" << std::setw(8) << "best" << std::setw(8) << "bound"
      << std::setw(8) << "source" << std::setw(6) << "gap"
      << "curve\n";
  for (const auto& c : t.cells) {
    out << std::setw(6) << c.q << std::setw(4) << c.g;
    if (c.best) {
      out << std::setw(8) << *c.best << std::setw(8) << c.bound.value << std::setw(8) << to_string(c.bound.source)
          << std::setw(6) << (c.bound.value - *c.best) << c.best_mask << '\n';
    } else {
      // The dash is multibyte, so pad by hand.
      out << "—" << std::string(7, ' ') << std::setw(8) << c.bound.value << std::setw(8)
          << to_string(c.bound.source) << "—\n";
    }
  }
  if (!t.ambiguous.empty()) {
    out << "\nunresolved genus\n";
    for (const auto& s : t.ambiguous) {
      out << to_hex(s.f) << " genus [" << s.genus.lo << ", " << s.genus.hi << "]";
      for (const auto& f : s.fields) out << " q=" << f.q << ":" << f.n_lo;
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace f2c
