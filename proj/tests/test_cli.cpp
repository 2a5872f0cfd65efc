#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axim/tensor_io.hpp"

using namespace axim;
namespace fs = std::filesystem;

namespace {

const std::string kBin = AXIM_BIN;

int run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string run_capture(const std::string& args, const std::string& out_file) {
  const std::string cmd = kBin + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  REQUIRE(WEXITSTATUS(status) == 0);
  std::ifstream is(out_file);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<char> slurp(const std::string& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("axim-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("kernels subcommand writes the stack and a preview") {
  TempDir tmp;
  const std::string stack_path = tmp / "stack.axt";
  CHECK(run("kernels --rows 32 --m-r 2 --n-r 3 --out " + stack_path + " --preview " +
            (tmp / "prev.pgm")) == 0);
  TensorInfo info;
  auto payload = read_tensor(stack_path, info);
  REQUIRE(info.dims.size() == 3);
  CHECK(info.dims[0] == 32);
  CHECK(info.dims[1] == 5);
  CHECK(info.dims[2] == 7);
  CHECK(info.tag == "kernel-stack");

  auto pgm = slurp(tmp / "prev.pgm");
  CHECK(pgm.size() > 2);
  CHECK(pgm[0] == 'P');
  CHECK(pgm[1] == '5');

  // constant-width family: every kernel slice is bit-identical
  const std::string flat_path = tmp / "flat.axt";
  CHECK(run("kernels --rows 16 --m-r 1 --n-r 2 --sigma1 0.8 --sigma2 0.8 --out " +
            flat_path) == 0);
  TensorInfo finfo;
  auto fpayload = read_tensor(flat_path, finfo);
  const std::size_t slice = 3 * 5;
  for (std::size_t i_h = 1; i_h < 16; ++i_h) {
    for (std::size_t i = 0; i < slice; ++i) {
      CHECK(fpayload[i_h * slice + i] == fpayload[i]);
    }
  }
}

TEST_CASE("simulate is reproducible from its manifest alone") {
  TempDir tmp;
  const std::string base = "simulate --rows 40 --cols 30 --m-r 2 --n-r 3 --map disks "
                           "--snr-db 40";
  CHECK(run(base + " --seed 11 --out-dir " + (tmp / "a")) == 0);
  CHECK(run(base + " --seed 11 --out-dir " + (tmp / "b")) == 0);
  CHECK(slurp(tmp / "a/rf.axt") == slurp(tmp / "b/rf.axt"));
  CHECK(slurp(tmp / "a/trf.axt") == slurp(tmp / "b/trf.axt"));

  CHECK(run("simulate --manifest " + (tmp / "a/manifest-simulate.txt") + " --out-dir " +
            (tmp / "c")) == 0);
  CHECK(slurp(tmp / "a/rf.axt") == slurp(tmp / "c/rf.axt"));
  CHECK(slurp(tmp / "a/trf.axt") == slurp(tmp / "c/trf.axt"));

  // different seed changes the observation
  CHECK(run(base + " --seed 12 --out-dir " + (tmp / "d")) == 0);
  CHECK(slurp(tmp / "a/rf.axt") != slurp(tmp / "d/rf.axt"));

  // no-noise run: rf equals the clean forward application on reuse
  CHECK(run(base + " --seed 11 --no-noise --out-dir " + (tmp / "e")) == 0);
  CHECK(run("simulate --manifest " + (tmp / "e/manifest-simulate.txt") + " --out-dir " +
            (tmp / "f")) == 0);
  CHECK(slurp(tmp / "e/rf.axt") == slurp(tmp / "f/rf.axt"));
}

TEST_CASE("deconvolve consumes the simulate manifest and reproduces itself") {
  TempDir tmp;
  REQUIRE(run("simulate --rows 32 --cols 24 --m-r 2 --n-r 2 --map points --seed 3 "
              "--out-dir " + (tmp / "sim")) == 0);

  const std::string manifest = tmp / "sim/manifest-simulate.txt";
  CHECK(run("deconvolve --manifest " + manifest + " --iters 12 --out-dir " +
            (tmp / "rec")) == 0);
  CHECK(fs::exists(tmp / "rec/recon.axt"));

  // objective column of the trace is non-increasing
  std::ifstream trace(tmp / "rec/trace.csv");
  std::string line;
  std::getline(trace, line);
  CHECK(line == "iter,objective,step");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(trace, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    const double objective = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(objective <= prev * (1.0 + 1e-15));
    prev = objective;
    ++rows;
  }
  CHECK(rows == 12);

  // reproduce the reconstruction from the deconvolve manifest
  CHECK(run("deconvolve --manifest " + (tmp / "rec/manifest-deconvolve.txt") +
            " --out-dir " + (tmp / "rec2")) == 0);
  CHECK(slurp(tmp / "rec/recon.axt") == slurp(tmp / "rec2/recon.axt"));

  // thread count does not change the result
  CHECK(run("deconvolve --manifest " + (tmp / "rec/manifest-deconvolve.txt") +
            " --threads 3 --out-dir " + (tmp / "rec3")) == 0);
  CHECK(slurp(tmp / "rec/recon.axt") == slurp(tmp / "rec3/recon.axt"));
}

TEST_CASE("invariant-kernel baseline equals the variant run for a constant-width stack") {
  TempDir tmp;
  REQUIRE(run("simulate --rows 24 --cols 18 --m-r 1 --n-r 2 --sigma1 0.7 --sigma2 0.7 "
              "--map gradient --seed 5 --out-dir " + (tmp / "sim")) == 0);
  const std::string manifest = tmp / "sim/manifest-simulate.txt";
  CHECK(run("deconvolve --manifest " + manifest + " --iters 10 --out-dir " +
            (tmp / "av")) == 0);
  CHECK(run("deconvolve --manifest " + manifest + " --iters 10 --invariant-kernel 12 "
            "--out-dir " + (tmp / "ai")) == 0);
  CHECK(slurp(tmp / "av/recon.axt") == slurp(tmp / "ai/recon.axt"));
}

TEST_CASE("metrics prints the expected line format") {
  TempDir tmp;
  REQUIRE(run("simulate --rows 16 --cols 12 --m-r 1 --n-r 1 --map wedge --seed 2 "
              "--out-dir " + (tmp / "sim")) == 0);
  const std::string out = run_capture(
      "metrics --ref " + (tmp / "sim/trf.axt") + " --est " + (tmp / "sim/trf.axt"),
      tmp / "metrics.txt");
  CHECK(out == "nrmse=0 psnr=300\n");

  const std::string out2 = run_capture(
      "metrics --ref " + (tmp / "sim/trf.axt") + " --est " + (tmp / "sim/rf.axt"),
      tmp / "metrics2.txt");
  CHECK(out2.rfind("nrmse=", 0) == 0);
  CHECK(out2.find(" psnr=") != std::string::npos);
}

TEST_CASE("bmode renders a P5 image with matching dimensions") {
  TempDir tmp;
  REQUIRE(run("simulate --rows 20 --cols 15 --m-r 1 --n-r 1 --map disks --seed 9 "
              "--out-dir " + (tmp / "sim")) == 0);
  CHECK(run("bmode --in " + (tmp / "sim/rf.axt") + " --out " + (tmp / "rf.pgm") +
            " --dr 40") == 0);
  std::ifstream is(tmp / "rf.pgm", std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  is >> magic >> w >> h >> maxval;
  CHECK(magic == "P5");
  CHECK(w == 15);
  CHECK(h == 20);
  CHECK(maxval == 255);
  is.get();
  std::vector<char> pixels(static_cast<std::size_t>(w) * h);
  is.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  CHECK(is.gcount() == static_cast<std::streamsize>(pixels.size()));
}

TEST_CASE("verify exits zero on success") {
  CHECK(run("verify --trials 3 --seed 42") == 0);
}

TEST_CASE("usage and IO errors exit with code 2") {
  TempDir tmp;
  CHECK(run("unknown-subcommand") == 2);
  CHECK(run("metrics --ref missing.axt --est missing.axt") == 2);
  CHECK(run("deconvolve --rf does-not-exist.axt --out-dir " + (tmp / "x")) == 2);
  CHECK(run("simulate --rows 8 --cols 8 --m-r 1 --n-r 1 --map nope --out-dir " +
            (tmp / "y")) == 2);
}
