#include "f2curves/record.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "f2curves/orbit.hpp"

namespace f2c {

const FieldRecord* CurveRecord::field_record(std::uint32_t q) const noexcept {
  for (const auto& fr : fields)
    if (fr.q == q) return &fr;
  return nullptr;
}

namespace {

FieldRecord analyze_field(const PolyMask& f, const PointCount& c) {
  const FieldTable& F = field(field_degree_of(c.q));
  FieldRecord fr;
  fr.q = c.q;
  fr.total = c.total;
  fr.smooth = c.smooth;
  for (const auto& p : c.singular_points) {
    SingularEntry e;
    e.point = analyze_singular_point(f, F, p);
    e.blowup = blowup_points_estimate(e.point, F);
    e.resolution = resolve_singularity(f, F, p);
    fr.singular.push_back(std::move(e));
  }
  return fr;
}

// Each geometric singular point of minimal degree k is counted in the
// smallest scanned field GF(2^m) with k | m.
std::vector<GeometricSingularity> geometric_singularities(const PolyMask& f,
                                                          const std::map<int, PointCount>& by_degree) {
  std::vector<GeometricSingularity> out;
  std::vector<int> scanned;
  for (const auto& [m, c] : by_degree) scanned.push_back(m);
  for (const auto& [m, c] : by_degree) {
    const FieldTable& F = field(m);
    for (const auto& p : c.singular_points) {
      const int k = point_field_degree(F, p);
      const int first = *std::find_if(scanned.begin(), scanned.end(), [k](int s) { return s % k == 0; });
      if (first != m) continue;
      const auto res = resolve_singularity(f, F, p);
      out.push_back({k, multiplicity_at(f, F, p), res.delta, res.complete});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CurveRecord build_record(const PolyMask& f, std::uint32_t orbit_size, std::vector<PointCount> counts,
                         const AnalysisOptions& options) {
  const BoundTable& bounds = options.bounds ? *options.bounds : BoundTable::shipped();
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) { return a.q < b.q; });

  CurveRecord r;
  r.f = f;
  r.text = to_text(f);
  r.orbit_size = orbit_size;

  std::map<int, PointCount> by_degree;
  std::map<std::uint32_t, std::int64_t> smooth;
  for (const auto& c : counts) {
    r.fields.push_back(analyze_field(f, c));
    smooth[c.q] = static_cast<std::int64_t>(c.smooth);
    by_degree.emplace(field_degree_of(c.q), c);
  }
  for (int m : kSingularScanDegrees)
    if (!by_degree.count(m)) by_degree.emplace(m, count_points(f, field(m)));

  r.geometric = geometric_singularities(f, by_degree);
  std::vector<int> mults;
  int deficit = 0;
  bool deltas_exact = true;
  for (const auto& g : r.geometric) {
    mults.push_back(g.multiplicity);
    deficit += g.delta;
    deltas_exact = deltas_exact && g.delta_exact;
  }
  r.genus = genus_interval_with_deficit(f.degree, deficit, smooth, &bounds);

  if (options.certify) r.irreducibility = certify_absolute(f);
  // An absolutely irreducible curve of degree <= 6 has at most 10 singular
  // points, so each lies over GF(2^k) with k <= 10 and the scan saw all of
  // them; with every delta known the genus is exact.
  if (r.irreducibility.absolute == Absolute::yes && deltas_exact && r.genus.lo <= r.genus.hi)
    r.genus.lo = r.genus.hi;

  for (auto& fr : r.fields) {
    FieldObservation obs{fr.q, static_cast<std::int64_t>(fr.smooth), 0, 0};
    for (const auto& e : fr.singular) {
      obs.credited += std::max(e.resolution.rational_places, e.blowup.lower);
      obs.rational_multiplicity += e.resolution.complete ? e.resolution.rational_places : e.point.multiplicity;
    }
    fr.model = smooth_model_bounds(obs, r.genus, bounds);
  }

  if (!r.genus.consistent())
    r.flags.push_back("genus_inconsistent");
  else if (!r.genus.pinned())
    r.flags.push_back("genus_ambiguous");
  if (options.certify) {
    if (r.irreducibility.absolute == Absolute::reducible) r.flags.push_back("reducible");
    if (r.irreducibility.absolute == Absolute::unknown) r.flags.push_back("irreducibility_unknown");
  }
  if (mults.size() >= 2 && !check_multiplicity_sum(mults, f.degree)) r.flags.push_back("multiplicity_sum_exceeded");
  const bool nonordinary = std::any_of(r.fields.begin(), r.fields.end(), [](const FieldRecord& fr) {
    return std::any_of(fr.singular.begin(), fr.singular.end(),
                       [](const SingularEntry& e) { return !e.point.ordinary; });
  });
  if (nonordinary) r.flags.push_back("nonordinary_singularity");
  return r;
}

CurveRecord verify(const PolyMask& f, std::span<const std::uint32_t> qs, const AnalysisOptions& options) {
  if (f.is_zero() || f.degree < 1 || f.degree > kMaxDegree)
    throw RejectedCurve("polynomial must be a nonzero form of degree 1..6");
  if (is_trivially_reducible(f)) throw RejectedCurve("trivially reducible: " + to_text(f));
  std::vector<PointCount> counts;
  std::set<std::uint32_t> seen;
  for (auto q : qs) {
    const int m = field_degree_of(q);
    if (m < 1 || m > 11) throw std::invalid_argument("unsupported field size " + std::to_string(q));
    if (!seen.insert(q).second) continue;
    counts.push_back(count_points(f, field(m)));
  }
  return build_record(f, describe_orbit(f).orbit_size, std::move(counts), options);
}

CurveRecord verify(const PolyMask& f, std::uint32_t q, const AnalysisOptions& options) {
  return verify(f, std::span<const std::uint32_t>(&q, 1), options);
}

std::string form_text(const BinaryForm& form, const FieldTable& F) {
  const int m = form.degree();
  std::string out;
  auto power = [](const char* var, int e) -> std::string {
    if (e == 0) return "";
    return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
  };
  for (int i = m; i >= 0; --i) {
    const Elem c = form.coeff[i];
    if (c == 0) continue;
    std::string mono = power("u", i);
    const std::string vpart = power("v", m - i);
    if (!vpart.empty()) mono += (mono.empty() ? "" : "*") + vpart;
    if (!out.empty()) out += " + ";
    if (c != 1) out += "(g^" + std::to_string(F.log(c)) + ")" + (mono.empty() ? "" : "*");
    out += (c == 1 && mono.empty()) ? "1" : mono;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const CurveRecord& r) {
  Json j;
  j["degree"] = r.f.degree;
  j["mask"] = to_hex(r.f);
  j["poly"] = r.text;
  j["orbit_size"] = r.orbit_size;
  Json fields = Json::array();
  for (const auto& fr : r.fields) {
    const FieldTable& F = field(field_degree_of(fr.q));
    Json jf;
    jf["q"] = fr.q;
    jf["total"] = fr.total;
    jf["smooth"] = fr.smooth;
    Json sing = Json::array();
    for (const auto& e : fr.singular) {
      Json s;
      s["point"] = point_text(e.point.point);
      s["k"] = e.point.k;
      s["mult"] = e.point.multiplicity;
      s["cone"] = form_text(e.point.tangent_cone, F);
      s["type"] = e.point.type;
      s["ordinary"] = e.point.ordinary;
      s["directions"] = e.blowup.rational_directions;
      s["delta"] = e.resolution.delta;
      s["resolved"] = e.resolution.complete;
      s["credited"] = std::max(e.resolution.rational_places, e.blowup.lower);
      sing.push_back(std::move(s));
    }
    jf["singular"] = std::move(sing);
    jf["n_lo"] = fr.model.n_lo;
    jf["n_hi"] = fr.model.n_hi;
    fields.push_back(std::move(jf));
  }
  j["fields"] = std::move(fields);
  Json geo = Json::array();
  for (const auto& g : r.geometric) geo.push_back({{"k", g.k}, {"mult", g.multiplicity}, {"delta", g.delta}, {"exact", g.delta_exact}});
  j["geometric_singular"] = std::move(geo);
  j["genus"] = {r.genus.lo, r.genus.hi};
  Json irr;
  irr["absolute"] = to_string(r.irreducibility.absolute);
  irr["k"] = r.irreducibility.certificate_field;
  if (r.irreducibility.witness) {
    const auto& w = *r.irreducibility.witness;
    irr["witness"] = to_text(w.g, field(w.k));
    irr["witness_k"] = w.k;
  } else {
    irr["witness"] = nullptr;
  }
  if (r.irreducibility.simple_point) {
    irr["simple_point"] = point_text(r.irreducibility.simple_point->point);
    irr["simple_point_k"] = r.irreducibility.simple_point->k;
  } else {
    irr["simple_point"] = nullptr;
  }
  j["irreducibility"] = std::move(irr);
  j["flags"] = r.flags;
  return j;
}

std::string to_catalog_line(const CurveRecord& r) { return to_json(r).dump(); }

CatalogSummary summary_from_json(const Json& j) {
  try {
    CatalogSummary s;
    s.f = parse_hex(j.at("mask").get<std::string>());
    const auto& g = j.at("genus");
    s.genus = {g.at(0).get<int>(), g.at(1).get<int>()};
    for (const auto& jf : j.at("fields")) {
      s.fields.push_back({jf.at("q").get<std::uint32_t>(), jf.at("smooth").get<std::int64_t>(),
                          jf.at("n_lo").get<std::int64_t>(), jf.at("n_hi").get<std::int64_t>()});
    }
    s.absolute = j.at("irreducibility").at("absolute").get<std::string>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed catalog record: ") + e.what());
  }
}

}  // namespace f2c
