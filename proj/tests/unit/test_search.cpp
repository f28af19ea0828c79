#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "f2curves/search.hpp"

using namespace f2c;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "f2curves-tests";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

SearchConfig quartic_config() {
  SearchConfig cfg;
  cfg.degree = 4;
  cfg.fields = {64, 16};
  cfg.threshold = 15;
  cfg.batch_size = 1024;
  return cfg;
}

std::vector<CatalogSummary> summaries(const std::vector<CatalogEntry>& catalog) {
  std::vector<CatalogSummary> out;
  for (const auto& e : catalog) out.push_back(summary_from_json(Json::parse(e.line)));
  return out;
}

}  // namespace

TEST_CASE("configuration validation") {
  SearchConfig cfg = quartic_config();
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.normalized_fields() == std::vector<std::uint32_t>{16, 64});
  auto bad = cfg;
  bad.fields = {4};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.fields = {4096};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.fields = {24};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.fields = {};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.degree = 7;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.jobs = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.lauter_path = "/nonexistent/bounds.txt";
  CHECK_THROWS_AS(run_search(bad), ConfigError);
  SearchConfig sextic;
  sextic.degree = 6;
  sextic.fields = {8};
  CHECK(sextic.effective_batch_size() == (1u << 22));
}

TEST_CASE("conics contribute nothing") {
  SearchConfig cfg;
  cfg.degree = 2;
  cfg.fields = {8, 16};
  const auto r = run_search(cfg);
  CHECK(r.complete);
  CHECK(r.catalog.empty());
  CHECK(r.stats.orbits == 4);
}

TEST_CASE("catalog does not depend on the number of threads") {
  auto cfg = quartic_config();
  const auto one = run_search(cfg);
  cfg.jobs = 3;
  const auto three = run_search(cfg);
  CHECK(one.complete);
  CHECK_FALSE(one.catalog.empty());
  CHECK(one.catalog == three.catalog);
  CHECK(one.candidates == three.candidates);
  for (std::size_t i = 1; i < one.catalog.size(); ++i) CHECK(one.catalog[i - 1].mask < one.catalog[i].mask);
}

TEST_CASE("every kept curve meets the threshold") {
  const auto cfg = quartic_config();
  const auto r = run_search(cfg);
  for (const auto& s : summaries(r.catalog)) {
    CHECK(s.genus.consistent());
    CHECK(s.absolute != "reducible");
    const auto rec = verify(s.f, cfg.normalized_fields());
    CHECK(meets_threshold(rec, cfg.threshold, cfg.min_genus, BoundTable::shipped()));
  }
}

TEST_CASE("interrupted search resumes to the same catalog") {
  const auto path = scratch("resume.ckpt");
  auto cfg = quartic_config();
  const auto reference = run_search(cfg);

  cfg.checkpoint_path = path;
  cfg.stop_after_batches = 7;
  const auto first = run_search(cfg);
  CHECK_FALSE(first.complete);
  CHECK(fs::exists(path));
  const auto ck = load_checkpoint(path);
  CHECK(ck.position == 7 * 1024);
  CHECK(ck.degree == 4);

  const auto second = run_search(cfg);
  CHECK(second.resumed);
  CHECK_FALSE(second.complete);

  cfg.stop_after_batches = 0;
  const auto rest = run_search(cfg);
  CHECK(rest.resumed);
  CHECK(rest.complete);
  CHECK(rest.catalog == reference.catalog);
  CHECK(rest.stats.orbits == reference.stats.orbits);
  CHECK(rest.stats.emitted == reference.stats.emitted);
  CHECK(rest.candidates == reference.candidates);
}

TEST_CASE("checkpoint errors") {
  const auto path = scratch("errors.ckpt");
  auto cfg = quartic_config();
  cfg.checkpoint_path = path;
  cfg.stop_after_batches = 2;
  run_search(cfg);

  SUBCASE("different configuration") {
    auto other = cfg;
    other.threshold = 20;
    CHECK_THROWS_AS(run_search(other), CheckpointError);
    other = cfg;
    other.fields = {16};
    CHECK_THROWS_AS(run_search(other), CheckpointError);
  }
  SUBCASE("flipped byte") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    char c = 0;
    f.read(&c, 1);
    f.seekp(40);
    c ^= 0x10;
    f.write(&c, 1);
    f.close();
    CHECK_THROWS_AS(load_checkpoint(path), CheckpointError);
    CHECK_THROWS_AS(run_search(cfg), CheckpointError);
  }
  SUBCASE("truncated") {
    fs::resize_file(path, fs::file_size(path) / 2);
    CHECK_THROWS_AS(run_search(cfg), CheckpointError);
  }
  SUBCASE("not a checkpoint") {
    std::ofstream(path) << "hello";
    CHECK_THROWS_AS(load_checkpoint(path), CheckpointError);
  }
}

TEST_CASE("checkpoint round trip") {
  const auto path = scratch("roundtrip.ckpt");
  Checkpoint ck;
  ck.degree = 3;
  ck.config_hash = 0x1234;
  ck.position = 77;
  ck.stats.orbits = 5;
  ck.candidates = 2;
  ck.words.assign(16, 0);
  ck.words[0] = 1;
  ck.words[15] = 0xffffffffffffffffull;
  ck.catalog = {{3, "{\"a\":1}"}, {9, "{}"}};
  save_checkpoint(path, ck);
  CHECK(load_checkpoint(path) == ck);
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}

TEST_CASE("catalog io and tallies") {
  const auto r = run_search(quartic_config());
  std::stringstream ss;
  write_catalog(ss, r.catalog);
  const auto lines = read_catalog(ss);
  CHECK(lines.size() == r.catalog.size());

  const auto tally = make_tally(summaries(r.catalog), BoundTable::shipped(), 3, 4);
  const auto* c = tally.cell(64, 3);
  REQUIRE(c);
  CHECK(c->best == 113);
  CHECK(c->bound.value == 113);
  const auto* empty = tally.cell(64, 4);
  REQUIRE(empty);
  CHECK_FALSE(empty->best);
  const auto text = format_tally(tally);
  CHECK(text.find("—") != std::string::npos);
  CHECK(text.find("113") != std::string::npos);
  CHECK_THROWS_AS(make_tally({}, BoundTable::shipped()), std::invalid_argument);

  std::stringstream broken("{\"degree\": 4}\nnot json\n");
  CHECK_THROWS(read_catalog(broken));
}
