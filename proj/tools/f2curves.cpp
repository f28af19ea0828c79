// f2curves: search, verify and tally plane curves over GF(2^m).

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "f2curves/search.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCheckpoint = 3;

std::vector<std::uint32_t> parse_fields(const std::string& text) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw f2c::ConfigError("bad field list entry '" + item + "'");
    }
  }
  return out;
}

f2c::BoundTable bounds_from(const std::string& path) {
  try {
    return path.empty() ? f2c::BoundTable::shipped() : f2c::BoundTable::load(path);
  } catch (const std::exception& e) {
    throw f2c::ConfigError(e.what());
  }
}

int run_search_cmd(f2c::SearchConfig cfg, const std::string& fields, const std::string& out_path, bool quiet) {
  cfg.fields = parse_fields(fields);
  cfg.validate();
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    if (!file) throw f2c::ConfigError("cannot write " + out_path);
  }
  auto progress = [&](const f2c::SearchProgress& p) {
    if (quiet) return;
    std::cerr << "\rscanned " << p.position << "/" << p.end << "  orbits " << p.orbits << "  analyzed "
              << p.candidates << "  kept " << p.kept << std::flush;
  };
  const auto result = f2c::run_search(cfg, progress);
  if (!quiet) std::cerr << '\n';
  f2c::write_catalog(out_path.empty() ? std::cout : file, result.catalog);
  if (!quiet) {
    std::cerr << "orbits " << result.stats.orbits << " (" << result.stats.skipped_orbits
              << " trivially reducible), analyzed " << result.candidates << ", kept " << result.catalog.size();
    if (!result.complete) std::cerr << ", stopped early at checkpoint";
    std::cerr << '\n';
  }
  return 0;
}

int run_verify_cmd(const std::string& poly, const std::string& mask, const std::string& fields,
                   const std::string& lauter) {
  if (poly.empty() == mask.empty()) throw f2c::ConfigError("give exactly one of --poly and --mask");
  f2c::PolyMask f;
  try {
    f = poly.empty() ? f2c::parse_hex(mask) : f2c::parse_poly(poly);
  } catch (const std::exception& e) {
    throw f2c::ConfigError(e.what());
  }
  const auto qs = parse_fields(fields);
  if (qs.empty()) throw f2c::ConfigError("--field is required");
  const auto bounds = bounds_from(lauter);
  f2c::AnalysisOptions options;
  options.bounds = &bounds;
  f2c::CurveRecord r;
  try {
    r = f2c::verify(f, qs, options);
  } catch (const std::invalid_argument& e) {
    throw f2c::ConfigError(e.what());
  }
  std::cout << f2c::to_json(r).dump(2) << '\n';
  return 0;
}

int run_report_cmd(const std::string& catalog, const std::string& lauter, int g_min, int g_max) {
  const auto bounds = bounds_from(lauter);
  std::vector<f2c::CatalogSummary> rows;
  try {
    for (const auto& j : f2c::read_catalog(catalog)) rows.push_back(f2c::summary_from_json(j));
    std::cout << f2c::format_tally(f2c::make_tally(rows, bounds, g_min, g_max));
  } catch (const std::invalid_argument& e) {
    throw f2c::ConfigError(e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for plane curves over GF(2^m) with many rational points"};
  app.require_subcommand(1);

  f2c::SearchConfig cfg;
  std::string fields, out_path, checkpoint, lauter_search;
  bool quiet = false;
  auto* search = app.add_subcommand("search", "Exhaustive search over one degree");
  search->add_option("--degree", cfg.degree, "Curve degree (1..6)")->required();
  search->add_option("--fields", fields, "Comma-separated field orders, e.g. 8,16,64")->required();
  search->add_option("--threshold", cfg.threshold, "Keep curves within this many points of the bound")
      ->capture_default_str();
  search->add_option("--min-genus", cfg.min_genus, "Smallest genus a kept curve may have")->capture_default_str();
  search->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  search->add_option("--checkpoint", checkpoint, "Checkpoint file (resumed when present)");
  search->add_option("--lauter", lauter_search, "Bound table file");
  search->add_option("--out", out_path, "Catalog output (default stdout)");
  search->add_option("--batch-size", cfg.batch_size, "Masks per sieve range (0 = automatic)");
  search->add_option("--stop-after", cfg.stop_after_batches, "Stop after this many ranges (0 = run to the end)");
  search->add_option("--checkpoint-interval", cfg.checkpoint_interval, "Seconds between checkpoints")
      ->capture_default_str();
  search->add_flag("--quiet", quiet, "No progress output");

  std::string poly, mask, verify_fields, lauter_verify;
  auto* verify = app.add_subcommand("verify", "Analyze a single curve");
  verify->add_option("--poly", poly, "Polynomial text, e.g. \"x^5 + y^5 + z^5\"");
  verify->add_option("--mask", mask, "Mask, e.g. d5:0x00108001");
  verify->add_option("--field", verify_fields, "Field order(s), comma-separated")->required();
  verify->add_option("--lauter", lauter_verify, "Bound table file");

  std::string catalog, lauter_report;
  int g_min = 3, g_max = 10;
  auto* report = app.add_subcommand("report", "Tally best point counts against bounds");
  report->add_option("--catalog", catalog, "Catalog file")->required();
  report->add_option("--lauter", lauter_report, "Bound table file");
  report->add_option("--gmin", g_min, "Smallest genus in the table")->capture_default_str();
  report->add_option("--gmax", g_max, "Largest genus in the table")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*search) {
      cfg.checkpoint_path = checkpoint;
      cfg.lauter_path = lauter_search;
      return run_search_cmd(cfg, fields, out_path, quiet);
    }
    if (*verify) return run_verify_cmd(poly, mask, verify_fields, lauter_verify);
    if (*report) return run_report_cmd(catalog, lauter_report, g_min, g_max);
  } catch (const f2c::CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kExitCheckpoint;
  } catch (const f2c::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
