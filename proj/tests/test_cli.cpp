#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kKey = "r = 3.912345678\nx0 = 0.5\nn1 = 3\nn2 = 4\nk0 = 1 1\nk1 = 0 1\nmode = strict\n";

struct Sandbox {
  fs::path dir;
  Sandbox() {
    std::string tmpl = (fs::temp_directory_path() / "hmec-cli-XXXXXX").string();
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    dir = tmpl;
  }
  ~Sandbox() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path operator/(const std::string& name) const { return dir / name; }
};

void write_file(const fs::path& p, const std::string& data) {
  std::ofstream(p, std::ios::binary) << data;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Runs the tool with stdout and stderr captured into the sandbox; returns the exit status.
int run(const Sandbox& box, const std::string& args, std::string* out = nullptr) {
  const auto out_path = box / "stdout.txt";
  const std::string cmd = std::string("'") + HMEC_CLI_PATH + "' " + args + " > '" +
                          out_path.string() + "' 2> '" + (box / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  if (out) *out = read_file(out_path);
  return WEXITSTATUS(status);
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_CASE("text file round trip", "[cli]") {
  Sandbox box;
  write_file(box / "key.txt", kKey);
  std::string text;
  for (int i = 1; i <= 28; ++i) text += "line " + std::to_string(i) + ": Course Name ME, Branch 07\n";
  write_file(box / "in.txt", text);

  REQUIRE(run(box, "encrypt --key " + q(box / "key.txt") + " --in " + q(box / "in.txt") + " --out " +
                       q(box / "ct.bin")) == 0);
  const auto ct = read_file(box / "ct.bin");
  CHECK(ct.substr(0, 4) == "HMEC");
  CHECK(ct.size() == 14 + text.size() + text.size() % 2);
  REQUIRE(run(box, "decrypt --key " + q(box / "key.txt") + " --in " + q(box / "ct.bin") + " --out " +
                       q(box / "out.txt")) == 0);
  CHECK(read_file(box / "out.txt") == text);
}

TEST_CASE("empty and binary files", "[cli]") {
  Sandbox box;
  write_file(box / "key.txt", kKey);
  write_file(box / "empty.txt", "");
  REQUIRE(run(box, "encrypt --key " + q(box / "key.txt") + " --in " + q(box / "empty.txt") +
                       " --out " + q(box / "e.bin")) == 0);
  CHECK(read_file(box / "e.bin").size() == 14);
  REQUIRE(run(box, "decrypt --key " + q(box / "key.txt") + " --in " + q(box / "e.bin") + " --out " +
                       q(box / "e.txt")) == 0);
  CHECK(read_file(box / "e.txt").empty());

  std::string binary;
  for (int i = 0; i < 256; ++i) binary.push_back(static_cast<char>(i));
  write_file(box / "bin.dat", binary);
  CHECK(run(box, "encrypt --key " + q(box / "key.txt") + " --in " + q(box / "bin.dat") + " --out " +
                     q(box / "b.bin")) == 4);
  REQUIRE(run(box, "encrypt --mode lenient --key " + q(box / "key.txt") + " --in " +
                       q(box / "bin.dat") + " --out " + q(box / "b.bin")) == 0);
  CHECK(read_file(box / "b.bin").size() == 14 + 512);
  REQUIRE(run(box, "decrypt --key " + q(box / "key.txt") + " --in " + q(box / "b.bin") + " --out " +
                       q(box / "b.out")) == 0);
  CHECK(read_file(box / "b.out") == binary);

  // Truncated container.
  const auto ct = read_file(box / "b.bin");
  write_file(box / "trunc.bin", ct.substr(0, ct.size() - 3));
  CHECK(run(box, "decrypt --key " + q(box / "key.txt") + " --in " + q(box / "trunc.bin") +
                     " --out " + q(box / "t.out")) == 5);
}

TEST_CASE("wrong key decrypts to different bytes", "[cli]") {
  Sandbox box;
  write_file(box / "key.txt", kKey);
  std::string wrong = kKey;
  wrong.replace(wrong.find("3.912345678"), 11, "3.912345679");
  write_file(box / "wrong.txt", wrong);
  std::mt19937 rng(5);
  std::string text;
  for (int i = 0; i < 1024; ++i) text.push_back(static_cast<char>(' ' + rng() % 95));
  write_file(box / "in.txt", text);
  REQUIRE(run(box, "encrypt --key " + q(box / "key.txt") + " --in " + q(box / "in.txt") + " --out " +
                       q(box / "ct.bin")) == 0);
  REQUIRE(run(box, "decrypt --key " + q(box / "wrong.txt") + " --in " + q(box / "ct.bin") +
                       " --out " + q(box / "out.txt")) == 0);
  const auto out = read_file(box / "out.txt");
  REQUIRE(out.size() == text.size());
  std::size_t differ = 0;
  for (std::size_t i = 0; i < out.size(); ++i) differ += out[i] != text[i];
  CHECK(differ * 4 >= text.size());
}

TEST_CASE("error exit codes", "[cli]") {
  Sandbox box;
  write_file(box / "key.txt", kKey);
  write_file(box / "bad.txt", "r = 3.1\n");
  write_file(box / "in.txt", "hello");
  CHECK(run(box, "encrypt --key " + q(box / "bad.txt") + " --in " + q(box / "in.txt") + " --out " +
                     q(box / "o")) == 2);
  CHECK(run(box, "encrypt --key " + q(box / "key.txt") + " --in " + q(box / "missing.txt") +
                     " --out " + q(box / "o")) == 3);
  CHECK(run(box, "frobnicate") == 64);
  CHECK(run(box, "encrypt --in " + q(box / "in.txt")) == 64);
}

TEST_CASE("analyze", "[cli]") {
  Sandbox box;
  write_file(box / "key.txt", kKey);
  std::string out;
  REQUIRE(run(box, "analyze --key " + q(box / "key.txt") + " --tests keyspace", &out) == 0);
  CHECK(out == "test,subject,metric,value\nkeyspace,r_grid,key_count,430000001\n");

  CHECK(run(box, "analyze --key " + q(box / "key.txt") + " --tests bogus") == 8);
  CHECK(run(box, "analyze --key " + q(box / "key.txt") + " --corpus " + q(box / "nope")) == 3);

  fs::create_directory(box / "corpus");
  CHECK(run(box, "analyze --key " + q(box / "key.txt") + " --tests sensitivity --corpus " +
                     q(box / "corpus")) == 9);
  write_file(box / "corpus/a.txt", std::string(256, 'a'));
  write_file(box / "corpus/b.txt", "The quick brown fox jumps over the lazy dog.");
  fs::create_directory(box / "attacks");
  REQUIRE(run(box, "analyze --key " + q(box / "key.txt") + " --tests sensitivity,kpa --corpus " +
                       q(box / "corpus") + " --grid-min 3.9 --grid-max 3.95 --grid-step 0.001" +
                       " --attack-dir " + q(box / "attacks") + " --out " + q(box / "report.csv")) == 0);
  const auto report = read_file(box / "report.csv");
  CHECK(report.find("sensitivity,a.txt,mean_percent,") != std::string::npos);
  CHECK(report.find("kpa,b.txt,candidates,") != std::string::npos);
  CHECK(read_file(box / "attacks/a.txt.kpa.csv").rfind("rank,r,matched_bytes\n", 0) == 0);
}

TEST_CASE("orbit", "[cli]") {
  Sandbox box;
  std::string out;
  REQUIRE(run(box, "orbit --r 3.99 --x0 0.1 --n 1000", &out) == 0);
  std::istringstream lines(out);
  std::string line;
  std::size_t rows = 0;
  std::getline(lines, line);
  CHECK(line == "k,x");
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 1000);

  REQUIRE(run(box, "orbit --r 3.57 --x0 0.99 --n 1", &out) == 0);
  CHECK(out == "k,x\n0,0.98999999999999999\n");

  CHECK(run(box, "orbit --r 2.5 --x0 0.5 --n 10") == 7);
  CHECK(run(box, "orbit --r 2.5 --x0 0.5 --n 10 --override-region --out " + q(box / "o.csv")) == 0);
  CHECK(read_file(box / "o.csv").rfind("k,x\n0,0.5\n", 0) == 0);
}

TEST_CASE("keygen", "[cli]") {
  Sandbox box;
  REQUIRE(run(box, "keygen --seed 11 --mode strict --out " + q(box / "k.txt")) == 0);
  const auto key = read_file(box / "k.txt");
  CHECK(key.find("mode = strict") != std::string::npos);
  write_file(box / "in.txt", "round trip through a generated key");
  REQUIRE(run(box, "encrypt --key " + q(box / "k.txt") + " --in " + q(box / "in.txt") + " --out " +
                       q(box / "c.bin")) == 0);
  REQUIRE(run(box, "decrypt --key " + q(box / "k.txt") + " --in " + q(box / "c.bin") + " --out " +
                       q(box / "p.txt")) == 0);
  CHECK(read_file(box / "p.txt") == "round trip through a generated key");
}
