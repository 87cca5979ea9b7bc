#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sl2zn/cli.hpp"

using namespace sl2zn;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--json");
  const Run r = run(args);
  CHECK(r.code == expected_code);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("decompose") {
  CHECK(run({"decompose", "0", "3,4,2,3"}).out == "T^2 S T^2 S T^2\n");
  const auto j = run_json({"decompose", "0", "5,-8,2,-3"}, 0);
  CHECK(j["word"] == "T^2 S T^-2 S^-1 T^-2");
  CHECK(j["verified"] == true);
  CHECK(j["status"] == "ok");

  const auto g = run_json({"decompose", "7", "1,0,0,1", "--method", "general"}, 0);
  CHECK(g["s_count"] == 3);
  CHECK(g["evaluates_to"] == "1,0,0,1");

  const auto bad = run_json({"decompose", "6", "1,1,0,1", "--method", "invc"}, 1);
  CHECK(bad["status"] == "verification-failed");
  CHECK(bad["error"] == "CNotInvertible");

  CHECK(run({"decompose", "7", "1,1,1,1"}).code == 2);
  CHECK(run({"decompose", "7", "1,2"}).code == 2);
  CHECK(run({"decompose", "7", "1,0,0,1", "--method", "bogus"}).code == 2);
  CHECK(run({"decompose", "0", "2,1,1,2"}).code == 2);
  CHECK(run({"decompose", "0", "1,0,0,1", "--method", "general"}).code == 2);

  for (const std::string v : {"uc_plus", "UC_MINUS", "xd_minus", "xd_plus", "xa_neg", "xa_pos"}) {
    const Run r = run({"decompose", "11", "3,4,5,7", "--method", "prop:" + v});
    CHECK((r.code == 0 || r.code == 1));
  }
  CHECK(run({"decompose", "11", "3,4,5,7", "--method", "prop:nope"}).code == 2);

  const auto c = run_json({"decompose", "9", "2,3,3,5", "--method", "canonical"}, 0);
  CHECK(c["up_to_sign"] == true);
  CHECK(run({"decompose", "12", "1,0,0,1", "--method", "canonical"}).code == 2);
}

TEST_CASE("verify") {
  const auto j = run_json({"verify", "5", "--what", "all"}, 0);
  CHECK(j["verified"] == true);
  CHECK(j["checks"].size() > 5);
  CHECK(run_json({"verify", "12", "--what", "idempotents"}, 0)["verified"] == true);
  const auto h = run_json({"verify", "7", "--what", "hwords"}, 0);
  CHECK(h["hwords"]["exchange_variant"] == "H_A S = S H_{1/A}");
  CHECK(h["hwords"]["exchange_printed_holds"] == false);
  CHECK(run({"verify", "1"}).code == 2);
  CHECK(run({"verify", "5", "--what", "everything"}).code == 2);
}

TEST_CASE("present") {
  const auto n5 = run_json({"present", "N5", "--enumerate"}, 0);
  CHECK(n5["enumeration"]["order"] == 120);
  CHECK(n5["enumeration"]["match"] == true);
  const auto n10 = run_json({"present", "N10", "--matrix-check", "10"}, 0);
  CHECK(n10["matrix_check"]["passed"] == true);
  CHECK(n10["matrix_check"]["identity"] == 7);
  const auto felsch = run_json({"present", "N8", "--enumerate", "--strategy", "felsch"}, 0);
  CHECK(felsch["enumeration"]["order"] == 384);
  const auto n6a = run_json({"present", "N6a", "--enumerate"}, 1);
  CHECK(n6a["enumeration"]["order"] == 72);
  CHECK(n6a["matrix_check"]["minus_identity"] == 1);
  const auto capped = run_json({"present", "R7", "--enumerate", "--cap", "1000"}, 1);
  CHECK(capped["enumeration"].contains("note"));
  CHECK(run({"present", "/nonexistent/relators.txt"}).code == 2);
  CHECK(run({"present", "N5", "--strategy", "random"}).code == 2);

  const auto path = temp_file("sl2zn_test_relators.txt");
  {
    std::ofstream f(path);
    f << "# SL2(Z/3)\nS^4\nT^3\nS T S T S T = S^2\n";
  }
  const auto file = run_json({"present", path.string(), "--enumerate", "--matrix-check", "3"}, 0);
  CHECK(file["enumeration"]["order"] == 24);
  {
    std::ofstream f(path);
    f << "S^4\nT^8\n";
  }
  const auto wrong = run_json({"present", path.string(), "--matrix-check", "7"}, 1);
  CHECK(wrong["matrix_check"]["failed"] == 1);
  std::filesystem::remove(path);
}

TEST_CASE("genus, order, enumerate") {
  CHECK(run({"genus", "10"}).out == "13\n");
  CHECK(run_json({"genus", "9"}, 0)["genus_prime_power"] == 10);
  CHECK(run({"genus", "2"}).code == 2);
  CHECK(run({"order", "6"}).out == "144\n");
  const Run words = run({"enumerate", "3", "--words"});
  CHECK(words.code == 0);
  CHECK(std::count(words.out.begin(), words.out.end(), '\n') == 12);
  CHECK(words.out.find('\t') != std::string::npos);
  CHECK(run_json({"enumerate", "4"}, 0)["count"] == 48);
  CHECK(run({"enumerate", "6", "--words"}).code == 2);
}

TEST_CASE("modular data commands") {
  const auto w1 = run_json({"wzw", "1", "--check-galois", "--check-field"}, 0);
  CHECK(w1["conductor"] == 24);
  CHECK(w1["galois"]["passed"] == true);
  CHECK(w1["galois"]["cases"].size() == 8);
  CHECK(w1["field"]["passed"] == true);

  const auto path = temp_file("sl2zn_test_datum.json");
  auto exported = run_json({"wzw", "2", "--export", path.string(), "--check-galois"}, 0);
  auto imported = run_json({"check-datum", path.string(), "--check-galois"}, 0);
  exported.erase("source");
  imported.erase("source");
  CHECK(exported == imported);

  // Corrupt one coefficient: T is no longer a root of unity.
  json datum;
  {
    std::ifstream f(path);
    datum = json::parse(f);
  }
  datum["T"][0][0] = "2";
  datum.erase("conductor");
  {
    std::ofstream f(path);
    f << datum.dump();
  }
  const auto broken = run_json({"check-datum", path.string()}, 1);
  CHECK(broken["verified"] == false);

  {
    std::ofstream f(path);
    f << "{\"rank\": 2";
  }
  CHECK(run({"check-datum", path.string()}).code == 2);
  CHECK(run({"check-datum", "/nonexistent/datum.json"}).code == 2);
  CHECK(run({"wzw", "-1"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
