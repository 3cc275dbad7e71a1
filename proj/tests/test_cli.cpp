#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "brim/cli.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path golden = BRIM_GOLDEN_DIR;

struct Run {
  int code;
  json report;
  std::string err;
};

brim::cli::CacheConfig no_cache() { return {false, {}}; }

Run brim_run(std::vector<std::string> args, const brim::cli::CacheConfig& cfg = no_cache()) {
  for (auto& a : args)
    if (a.size() > 5 && a.ends_with(".json") && !fs::path(a).is_absolute() && fs::exists(golden / a))
      a = (golden / a).string();
  std::ostringstream out, err;
  int code = brim::cli::run(args, out, err, cfg);
  json j;
  if (out.str().starts_with("{")) j = json::parse(out.str());
  return {code, j, err.str()};
}

std::string without_timing(json j) {
  j.erase("timing");
  return j.dump(2) + "\n";
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("brim-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("payloads of the documented invocations") {
  CHECK(brim_run({"length", "line.json", "-m", "E", "-n", "3"}).report["result"]["length"] == 6);
  CHECK(brim_run({"length", "plane.json", "-m", "m,x2y", "-n", "1,1"}).report["result"]["length"] == 4);
  CHECK(brim_run({"ebr", "mf.json", "-m", "mF"}).report["result"]["value"] == 3);
  CHECK(brim_run({"mixed", "plane.json", "-m", "m,x2y", "-d", "1,1"}).report["result"]["value"] == 1);
  CHECK(brim_run({"assoc", "mf.json", "-m", "mF", "-d", "2", "-j", "1"}).report["result"]["value"] == 1);
  CHECK(brim_run({"gmult", "plane.json", "-e", "x,y"}).report["result"]["value"] == 1);
  CHECK(brim_run({"gmult", "plane.json", "-e", "xx,y"}).report["result"]["value"] == 2);

  auto cv = brim_run({"check", "converse", "plane.json", "-x", "x,y", "-m", "m,m"});
  CHECK(cv.code == 0);
  CHECK(cv.report["result"]["consistent"] == true);
  auto red = brim_run({"check", "reduction", "plane.json", "-u", "sq", "-m", "m2", "--nmax", "6"});
  CHECK(red.report["result"]["verdict"] == "true");
  CHECK(red.report["result"]["n0"] == 1);
}

TEST_CASE("report shape") {
  auto r = brim_run({"ebr", "mf.json", "-m", "mF"});
  REQUIRE(r.code == 0);
  for (const char* k : {"command", "inputs_hash", "result", "seed", "timing"}) CHECK(r.report.contains(k));
  CHECK(r.report["command"]["name"] == "ebr");
  CHECK(r.report["inputs_hash"].get<std::string>().size() == 64);
  CHECK(r.report["result"]["table"]["axes"] == json::array({"n1"}));
  CHECK(r.report["seed"].is_null());
  CHECK(r.report["timing"]["cache"] == "off");

  auto rt = brim_run({"check", "risler", "plane.json", "-m", "m,m", "-d", "1,1", "--seed", "5"});
  CHECK(rt.report["seed"] == 5);
}

TEST_CASE("exit codes") {
  using brim::ErrorKind;
  CHECK(brim::cli::exit_code(ErrorKind::InvalidInput) == 2);
  CHECK(brim::cli::exit_code(ErrorKind::NotDeskCase) == 2);
  CHECK(brim::cli::exit_code(ErrorKind::ResourceLimit) == 3);
  CHECK(brim::cli::exit_code(ErrorKind::NoStabilization) == 3);
  CHECK(brim::cli::exit_code(ErrorKind::DegreeDeficiency) == 3);
  CHECK(brim::cli::exit_code(ErrorKind::SuperficialSamplingFailed) == 3);
  CHECK(brim::cli::exit_code(ErrorKind::Internal) == 4);

  CHECK(brim_run({"length", "plane.json", "-m", "nope", "-n", "3"}).code == 2);
  CHECK(brim_run({"gmult", "plane.json", "-e", "bad,y"}).code == 2);
  CHECK(brim_run({"check", "nonsense", "plane.json"}).code == 2);
  CHECK(brim_run({"frobnicate"}).code == 2);
  CHECK(brim_run({"ebr", "no-such-file.json", "-m", "E"}).code == 2);
  CHECK(brim_run({"ebr", "plane.json", "-m", "m,m2"}).code == 2);
  CHECK(brim_run({"ebr", "plane.json", "-m", "m", "--threads", "0"}).code == 2);

  // mixed-degree generators leave every sampled sequence off the origin
  auto rt = brim_run({"check", "risler", "plane.json", "-m", "m,x2y", "-d", "1,1"});
  CHECK(rt.code == 3);
  CHECK(rt.report["error"]["kind"] == "SuperficialSamplingFailed");

  auto help = brim_run({"--help"});
  CHECK(help.code == 0);
}

TEST_CASE("spec parsing") {
  auto dir = scratch_dir("spec");
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  auto broken = write("broken.json", "{\"ring\": ");
  CHECK(brim_run({"ebr", broken, "-m", "E"}).code == 2);
  auto clash = write("clash.json", R"({"ring": {"d": 1, "p": 1}, "modules": {"E": {"gens": ["x1*t1"]}}, "elements": {"E": "x1*t1"}})");
  CHECK(brim_run({"ebr", clash, "-m", "E"}).code == 2);
  auto inhomog = write("inhomog.json", R"({"ring": {"d": 1, "p": 1}, "modules": {"E": {"tdeg": 2, "gens": ["x1*t1"]}}})");
  CHECK(brim_run({"ebr", inhomog, "-m", "E"}).code == 2);
  auto badfield = write("badfield.json", R"({"ring": {"field": 12, "d": 1, "p": 1}, "modules": {"E": {"gens": ["x1*t1"]}}})");
  CHECK(brim_run({"ebr", badfield, "-m", "E"}).code == 2);
  auto wrongtype = write("wrongtype.json", R"({"ring": {"d": 1, "p": 1}, "modules": {"E": {"gens": [{"x": 1}]}}})");
  CHECK(brim_run({"ebr", wrongtype, "-m", "E"}).code == 2);

  // prime fields and the vector form land on the same values
  auto modp = write("modp.json", R"({"ring": {"field": 32003, "d": 2, "p": 2},
      "modules": {"mF": {"gens": ["x1*t1", "x2*t1", "x1*t2", "x2*t2"]}}})");
  auto r = brim_run({"ebr", modp, "-m", "mF"});
  CHECK(r.code == 0);
  CHECK(r.report["result"]["value"] == 3);
  auto gf = write("gf.json", R"j({"ring": {"field": "GF(101)", "d": 1, "p": 1}, "modules": {"E": {"gens": [["x1^3"]]}}})j");
  CHECK(brim_run({"ebr", gf, "-m", "E"}).report["result"]["value"] == 3);
  fs::remove_all(dir);
}

TEST_CASE("sha256") {
  CHECK(brim::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(brim::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("golden reports") {
  std::ifstream in(golden / "commands.txt");
  REQUIRE(in);
  bool update = std::getenv("BRIM_UPDATE_GOLDEN") != nullptr;
  int count = 0;
  for (std::string line; std::getline(in, line);) {
    auto words = split(line);
    if (words.empty()) continue;
    std::string name = words.front();
    std::string spec = words[1];
    std::vector<std::string> args(words.begin() + 2, words.end());
    // the spec is the first positional after the (sub)command words
    std::size_t at = args[0] == "check" ? 2 : 1;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), spec);
    CAPTURE(name);

    auto a = brim_run(args);
    REQUIRE(a.code == 0);
    auto threaded = args;
    threaded.push_back("--threads");
    threaded.push_back("4");
    auto b = brim_run(threaded);
    auto c = brim_run(args);
    CHECK(without_timing(a.report) == without_timing(b.report));
    CHECK(without_timing(a.report) == without_timing(c.report));

    auto file = golden / (name + ".golden.json");
    if (update) std::ofstream(file) << without_timing(a.report);
    std::ifstream g(file);
    REQUIRE(g);
    std::stringstream ss;
    ss << g.rdbuf();
    CHECK(ss.str() == without_timing(a.report));
    ++count;
  }
  CHECK(count >= 10);
}

TEST_CASE("cache: warm and cold payloads agree") {
  auto dir = scratch_dir("cache");
  brim::cli::CacheConfig cfg{true, dir / ".brim-cache"};
  std::vector<std::vector<std::string>> cmds{
      {"ebr", "mf.json", "-m", "mF"},
      {"mixed", "plane.json", "-m", "m,x2y", "-d", "1,1"},
      {"assoc", "mf.json", "-m", "mF", "-d", "2", "-j", "1"},
      {"tilde-ebr", "plane.json", "-m", "m2"},
  };
  for (const auto& cmd : cmds) {
    auto cold = brim_run(cmd, cfg);
    auto warm = brim_run(cmd, cfg);
    auto off = brim_run(cmd);
    CHECK(cold.report["timing"]["cache"] == "miss");
    CHECK(warm.report["timing"]["cache"] == "hit");
    CHECK(without_timing(cold.report) == without_timing(warm.report));
    CHECK(without_timing(cold.report) == without_timing(off.report));
  }
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(cfg.dir)) {
    ++files;
    auto t = json::parse(std::ifstream(e.path()));
    CHECK(t.contains("axes"));
    CHECK(t.contains("window"));
    CHECK(t.contains("values"));
  }
  CHECK(files == cmds.size());

  // a damaged entry is recomputed, not trusted
  for (const auto& e : fs::directory_iterator(cfg.dir)) std::ofstream(e.path()) << "{\"axes\": [\"n1\"], \"window\": [[1,2]], \"values\": [1]}";
  for (const auto& cmd : cmds) {
    auto again = brim_run(cmd, cfg);
    CHECK(again.report["timing"]["cache"] == "miss");
    CHECK(without_timing(again.report) == without_timing(brim_run(cmd).report));
  }
  fs::remove_all(dir);
}
