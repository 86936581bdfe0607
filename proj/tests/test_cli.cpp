// End-to-end checks of the command-line tool. The binary path arrives as the
// first positional argument (wired up in CMake).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "geoforest/io.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace geoforest;

static std::string g_cli;
static fs::path g_dir;

namespace {

int run(const std::string& args) {
  const std::string cmd = g_cli + " " + args + " > " + (g_dir / "stdout.txt").string() +
                          " 2> " + (g_dir / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string path(const std::string& name) { return (g_dir / name).string(); }

void write(const std::string& name, const std::string& text) {
  std::ofstream out(path(name));
  out << text;
}

const char* kMixtureSpec = R"json({
  "signature": {"components": [
    {"kind": "sphere", "dim": 2, "curvature": 1.0},
    {"kind": "euclidean", "dim": 2, "curvature": 0.0}
  ]},
  "n_points": 120, "n_clusters": 4, "n_classes": 2,
  "task": "classification", "seed": 9
})json";

}  // namespace

TEST_CASE("sample, fit, predict round-trip matches the in-process path") {
  write("spec.json", kMixtureSpec);
  write("sig.json", R"({"components": [
    {"kind": "sphere", "dim": 2, "curvature": 1.0},
    {"kind": "euclidean", "dim": 2, "curvature": 0.0}
  ]})");
  REQUIRE(run("sample --spec " + path("spec.json") + " --out " + path("data.csv") +
              " --sidecar " + path("params.json")) == 0);
  REQUIRE(run("fit --data " + path("data.csv") + " --signature " + path("sig.json") +
              " --model product_rf --seed 5 --out " + path("model.json")) == 0);
  REQUIRE(run("predict --model " + path("model.json") + " --data " + path("data.csv") +
              " --out " + path("pred.csv")) == 0);

  // reproduce in process
  const Signature sig = load_signature(path("sig.json"));
  const Dataset ds = load_labeled_csv(path("data.csv"), sig, Task::Classification);
  const AngleMatrix am = compute_angles(ds.points, FeatureMode::BasisOnly);
  ForestHyperparams hp;
  hp.seed = 5;
  const Forest f = fit_forest(am, ds.labels, hp);

  std::ifstream in(path("pred.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "label");
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CHECK(std::stoi(line) == predict_label(f, am.angles.row(i)));
    ++i;
  }
  CHECK(i == 120);

  // attribution runs on the saved model
  REQUIRE(run("attribution --model " + path("model.json") + " --out " + path("attr.json")) == 0);
  const auto attr = nlohmann::json::parse(read_text_file(path("attr.json")));
  REQUIRE(attr.contains("fractions"));
  double total = 0.0;
  for (double v : attr["fractions"]) total += v;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("evaluate produces one score per seed") {
  write("eval.json", std::string(R"({
    "name": "toy",
    "data": {"mixture": )") + kMixtureSpec + R"(},
    "model": "product_dt",
    "n_seeds": 10,
    "tree": {"max_depth": 3}
  })");
  REQUIRE(run("evaluate --config " + path("eval.json") + " --out " + path("report.json")) == 0);
  const auto report = nlohmann::json::parse(read_text_file(path("report.json")));
  CHECK(report["metric"] == "accuracy");
  CHECK(report["scores"].size() == 10);
}

TEST_CASE("malformed signature exits with code 2 and names the field") {
  write("bad_sig.json", R"({"components": [{"kind": "klein_bottle", "dim": 2}]})");
  write("empty.csv", "c0_0,c0_1,c0_2\n");
  CHECK(run("fit --data " + path("empty.csv") + " --signature " + path("bad_sig.json") +
            " --out " + path("m.json")) == 2);
  std::ifstream err(path("stderr.txt"));
  std::string text((std::istreambuf_iterator<char>(err)), std::istreambuf_iterator<char>());
  CHECK(text.find("kind") != std::string::npos);
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("fit") == 1);                 // missing required options
  CHECK(run("no_such_subcommand") == 1);  // unknown subcommand
}

TEST_CASE("linkpred builds the pair dataset") {
  write("lp_sig.json", R"({"components": [{"kind": "sphere", "dim": 1, "curvature": 1.0}]})");
  // four points on the circle
  write("emb.csv",
        "c0_0,c0_1\n1,0\n0,1\n-1,0\n0,-1\n");
  write("edges.csv", "src,dst\n0,1\n1,2\n");
  REQUIRE(run("linkpred --embeddings " + path("emb.csv") + " --signature " +
              path("lp_sig.json") + " --edges " + path("edges.csv") + " --out " +
              path("lp.csv")) == 0);
  Signature out_sig{{{Kind::Sphere, 1, 1.0}, {Kind::Sphere, 1, 1.0}, {Kind::Euclidean, 1, 0.0}}};
  const Dataset lp = load_labeled_csv(path("lp.csv"), out_sig, Task::Classification);
  CHECK(lp.rows() == 16);
  int positives = 0;
  for (int y : lp.labels) positives += y;
  CHECK(positives == 4);  // two undirected edges, both pair orders
}

int main(int argc, char** argv) {
  int arg_start = 1;
  if (argc > 1 && argv[1][0] != '-') {
    g_cli = argv[1];
    arg_start = 2;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-geoforest-binary> [doctest args]\n");
    return 1;
  }
  g_dir = fs::temp_directory_path() / "geoforest_cli_test";
  fs::remove_all(g_dir);
  fs::create_directories(g_dir);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - arg_start + 1, argv + arg_start - 1);
  const int rc = ctx.run();
  fs::remove_all(g_dir);
  return rc;
}
