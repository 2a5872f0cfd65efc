// Command-line front end: kernel-stack generation, forward simulation,
// deconvolution, identity verification, B-mode rendering, and metrics.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "axim/axial.hpp"
#include "axim/bmode.hpp"
#include "axim/image.hpp"
#include "axim/manifest.hpp"
#include "axim/padding.hpp"
#include "axim/phantom.hpp"
#include "axim/rng.hpp"
#include "axim/solver.hpp"
#include "axim/tensor_io.hpp"
#include "axim/verify.hpp"

namespace fs = std::filesystem;
using namespace axim;

namespace {

// Distinct noise stream so observation noise never reuses the reflectivity
// draws produced from the same user-facing seed.
std::uint64_t noise_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x6e6f697365ULL); }

struct KernelFlags {
  int rows = 256;
  int cols = 128;
  int row_radius = 5;
  int col_radius = 12;
  double f0 = 3.0e6;
  double fs = 20.0e6;
  double sigma1 = 0.0;  // 0: default radius/3
  double sigma2 = 0.0;

  KernelParams params() const {
    KernelParams p;
    p.row_radius = row_radius;
    p.col_radius = col_radius;
    p.image_rows = rows;
    p.f0 = f0;
    p.fs = fs;
    if (sigma1 > 0.0) p.sigma_axial = sigma1;
    if (sigma2 > 0.0) p.sigma_lateral_max = sigma2;
    return p;
  }
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& kf, bool with_cols) {
  cmd->add_option("--rows", kf.rows, "Image height (depth rows)")->check(CLI::PositiveNumber);
  if (with_cols) {
    cmd->add_option("--cols", kf.cols, "Image width")->check(CLI::PositiveNumber);
  }
  cmd->add_option("--m-r", kf.row_radius, "Axial kernel radius")->check(CLI::NonNegativeNumber);
  cmd->add_option("--n-r", kf.col_radius, "Lateral kernel radius")->check(CLI::NonNegativeNumber);
  cmd->add_option("--f0", kf.f0, "Center frequency in Hz");
  cmd->add_option("--fs", kf.fs, "Sampling frequency in Hz");
  cmd->add_option("--sigma1", kf.sigma1, "Axial SD in pixels (0 = radius/3)");
  cmd->add_option("--sigma2", kf.sigma2, "Maximum lateral SD in pixels (0 = radius/3)");
}

void record_kernel_flags(Manifest& m, const KernelFlags& kf, bool with_cols) {
  m.set_int("rows", kf.rows);
  if (with_cols) m.set_int("cols", kf.cols);
  m.set_int("m-r", kf.row_radius);
  m.set_int("n-r", kf.col_radius);
  m.set_double("f0", kf.f0);
  m.set_double("fs", kf.fs);
  m.set_double("sigma1", kf.params().axial_sd());
  m.set_double("sigma2", kf.params().lateral_sd_max());
}

void load_kernel_flags(const Manifest& m, const CLI::App* cmd, KernelFlags& kf,
                       bool with_cols) {
  auto absent = [&](const std::string& flag) { return cmd->get_option(flag)->count() == 0; };
  if (m.has("rows") && absent("--rows")) kf.rows = static_cast<int>(m.get_int("rows"));
  if (with_cols && m.has("cols") && absent("--cols")) kf.cols = static_cast<int>(m.get_int("cols"));
  if (m.has("m-r") && absent("--m-r")) kf.row_radius = static_cast<int>(m.get_int("m-r"));
  if (m.has("n-r") && absent("--n-r")) kf.col_radius = static_cast<int>(m.get_int("n-r"));
  if (m.has("f0") && absent("--f0")) kf.f0 = m.get_double("f0");
  if (m.has("fs") && absent("--fs")) kf.fs = m.get_double("fs");
  if (m.has("sigma1") && absent("--sigma1")) kf.sigma1 = m.get_double("sigma1");
  if (m.has("sigma2") && absent("--sigma2")) kf.sigma2 = m.get_double("sigma2");
}

GrayImage kernel_preview_strip(const KernelParams& params, int depths) {
  const int mk = 2 * params.row_radius + 1;
  const int nk = 2 * params.col_radius + 1;
  const int gap = 2;
  GrayImage strip;
  strip.rows = mk;
  strip.cols = depths * nk + (depths - 1) * gap;
  strip.pixels.assign(static_cast<std::size_t>(strip.rows) * strip.cols, 0);
  for (int d = 0; d < depths; ++d) {
    const int i_h =
        1 + static_cast<int>(std::llround(double(d) * (params.image_rows - 1) /
                                          std::max(1, depths - 1)));
    Image env = envelope(make_kernel(params, std::min(i_h, params.image_rows)));
    double lo = env.at(0, 0), hi = env.at(0, 0);
    for (double v : env.values()) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    const int c0 = d * (nk + gap);
    for (int i = 0; i < mk; ++i) {
      for (int j = 0; j < nk; ++j) {
        const double norm = (env.at(i, j) - lo) / span;
        strip.pixels[std::size_t(i) * strip.cols + c0 + j] =
            static_cast<std::uint8_t>(std::lround(255.0 * norm));
      }
    }
  }
  return strip;
}

int cmd_kernels(const KernelFlags& kf, const std::string& out,
                const std::string& preview) {
  KernelParams params = kf.params();
  AxialKernelStack stack = make_kernel_stack(params, 1);
  write_kernel_stack_tensor(out, stack);
  std::cout << "wrote " << out << " dims [" << stack.image_rows() << ", "
            << stack.kernel_rows() << ", " << stack.kernel_cols() << "]\n";
  if (!preview.empty()) {
    write_pgm(preview, kernel_preview_strip(params, 20));
    std::cout << "wrote " << preview << "\n";
  }
  return 0;
}

struct SimulateOptions {
  KernelFlags kf;
  std::string map = "phantom";
  std::string map_file;
  std::string trf_file;
  std::string pad_mode = "symmetric";
  double snr_db = 40.0;
  bool no_noise = false;
  std::uint64_t seed = 1;
  int scatter_coarse = 1;
  double trf_scale = 1.0;
  int threads = 1;
  bool deterministic = false;
  std::string out_dir;
  std::string manifest_path;
};

Image load_or_make_trf(const SimulateOptions& opt) {
  if (!opt.trf_file.empty()) return read_image_tensor(opt.trf_file);
  Image map = opt.map_file.empty()
                  ? make_intensity_map(opt.kf.rows, opt.kf.cols, opt.map)
                  : read_image_tensor(opt.map_file);
  if (map.rows() != opt.kf.rows || map.cols() != opt.kf.cols) {
    throw std::runtime_error("intensity map is " + std::to_string(map.rows()) + "x" +
                             std::to_string(map.cols()) + " but the image is " +
                             std::to_string(opt.kf.rows) + "x" +
                             std::to_string(opt.kf.cols));
  }
  Image trf = make_interpolated_trf(opt.kf.rows, opt.kf.cols, map, opt.seed,
                                    opt.scatter_coarse);
  if (opt.trf_scale != 1.0) {
    for (double& v : trf.values()) v *= opt.trf_scale;
  }
  return trf;
}

int cmd_simulate(SimulateOptions opt, const CLI::App* cmd) {
  if (!opt.manifest_path.empty()) {
    Manifest m = Manifest::load(opt.manifest_path);
    auto absent = [&](const std::string& flag) {
      return cmd->get_option(flag)->count() == 0;
    };
    load_kernel_flags(m, cmd, opt.kf, true);
    if (m.has("map") && absent("--map")) opt.map = m.get("map");
    if (m.has("map-file") && absent("--map-file")) opt.map_file = m.get("map-file");
    if (m.has("trf-source") && absent("--trf-file")) opt.trf_file = m.get("trf-source");
    if (m.has("pad-mode") && absent("--pad-mode")) opt.pad_mode = m.get("pad-mode");
    if (m.has("snr-db") && absent("--snr-db")) opt.snr_db = m.get_double("snr-db");
    if (m.has("no-noise") && absent("--no-noise")) opt.no_noise = m.get_int("no-noise") != 0;
    if (m.has("seed") && absent("--seed")) opt.seed = m.get_uint("seed");
    if (m.has("scatter-coarse") && absent("--scatter-coarse")) {
      opt.scatter_coarse = static_cast<int>(m.get_int("scatter-coarse"));
    }
    if (m.has("trf-scale") && absent("--trf-scale")) opt.trf_scale = m.get_double("trf-scale");
    if (m.has("threads") && absent("--threads")) opt.threads = static_cast<int>(m.get_int("threads"));
  }

  fs::create_directories(opt.out_dir);
  const std::string trf_path = (fs::path(opt.out_dir) / "trf.axt").string();
  const std::string rf_path = (fs::path(opt.out_dir) / "rf.axt").string();

  Image trf = load_or_make_trf(opt);
  if (trf.rows() != opt.kf.rows || trf.cols() != opt.kf.cols) {
    throw std::runtime_error("reflectivity image shape does not match --rows/--cols");
  }
  ForwardModel model(make_kernel_stack(opt.kf.params(), opt.kf.cols),
                     pad_mode_from_string(opt.pad_mode));
  std::optional<double> snr;
  if (!opt.no_noise) snr = opt.snr_db;
  Image rf = model.simulate(trf, snr, noise_seed(opt.seed), opt.threads);

  write_image_tensor(trf_path, trf, "trf");
  write_image_tensor(rf_path, rf, "rf");

  Manifest m;
  m.set("command", "simulate");
  record_kernel_flags(m, opt.kf, true);
  if (!opt.trf_file.empty()) {
    m.set("trf-source", opt.trf_file);
  } else if (!opt.map_file.empty()) {
    m.set("map-file", opt.map_file);
  } else {
    m.set("map", opt.map);
  }
  m.set("pad-mode", opt.pad_mode);
  m.set_int("no-noise", opt.no_noise ? 1 : 0);
  if (!opt.no_noise) m.set_double("snr-db", opt.snr_db);
  m.set_uint("seed", opt.seed);
  m.set_int("scatter-coarse", opt.scatter_coarse);
  m.set_double("trf-scale", opt.trf_scale);
  m.set_int("threads", opt.threads);
  m.set_int("deterministic", opt.deterministic ? 1 : 0);
  m.set("trf-file", trf_path);
  m.set("rf-file", rf_path);
  m.save((fs::path(opt.out_dir) / "manifest-simulate.txt").string());

  std::cout << "wrote " << trf_path << " and " << rf_path << "\n";
  return 0;
}

struct DeconvolveOptions {
  KernelFlags kf;
  std::string rf_file;
  std::string stack_file;
  std::string pad_mode = "symmetric";
  double lambda1 = 2e-3;
  double lambda2 = 1e-4;
  int iters = 150;
  double step = 0.0;  // 0: auto via power iteration
  double shrink = 0.5;
  double tol = 0.0;  // 0: fixed iteration budget
  int invariant_kernel = 0;
  int threads = 1;
  bool deterministic = false;
  std::string out_dir;
  std::string manifest_path;
};

int cmd_deconvolve(DeconvolveOptions opt, const CLI::App* cmd) {
  if (!opt.manifest_path.empty()) {
    Manifest m = Manifest::load(opt.manifest_path);
    auto absent = [&](const std::string& flag) {
      return cmd->get_option(flag)->count() == 0;
    };
    load_kernel_flags(m, cmd, opt.kf, true);
    if (m.has("rf-file") && absent("--rf")) opt.rf_file = m.get("rf-file");
    if (m.has("stack-file") && absent("--stack")) opt.stack_file = m.get("stack-file");
    if (m.has("pad-mode") && absent("--pad-mode")) opt.pad_mode = m.get("pad-mode");
    if (m.has("lambda1") && absent("--lambda1")) opt.lambda1 = m.get_double("lambda1");
    if (m.has("lambda2") && absent("--lambda2")) opt.lambda2 = m.get_double("lambda2");
    if (m.has("iters") && absent("--iters")) opt.iters = static_cast<int>(m.get_int("iters"));
    if (m.has("step") && absent("--step")) opt.step = m.get_double("step");
    if (m.has("shrink") && absent("--shrink")) opt.shrink = m.get_double("shrink");
    if (m.has("tol") && absent("--tol")) opt.tol = m.get_double("tol");
    if (m.has("invariant-kernel") && absent("--invariant-kernel")) {
      opt.invariant_kernel = static_cast<int>(m.get_int("invariant-kernel"));
    }
    if (m.has("threads") && absent("--threads")) opt.threads = static_cast<int>(m.get_int("threads"));
  }
  if (opt.rf_file.empty()) {
    throw std::runtime_error("deconvolve: --rf (or a manifest providing rf-file) is required");
  }

  fs::create_directories(opt.out_dir);
  Image rf = read_image_tensor(opt.rf_file);
  opt.kf.rows = rf.rows();
  opt.kf.cols = rf.cols();

  AxialKernelStack stack =
      opt.stack_file.empty() ? make_kernel_stack(opt.kf.params(), rf.cols())
                             : read_kernel_stack_tensor(opt.stack_file, rf.cols());
  if (stack.image_rows() != rf.rows()) {
    throw std::runtime_error("kernel stack has " + std::to_string(stack.image_rows()) +
                             " rows but the observation has " + std::to_string(rf.rows()));
  }
  if (opt.invariant_kernel != 0) {
    const Kernel fixed = stack.kernel(opt.invariant_kernel);
    for (int i_h = 1; i_h <= stack.image_rows(); ++i_h) stack.set_kernel(i_h, fixed);
  }

  ForwardModel model(std::move(stack), pad_mode_from_string(opt.pad_mode));
  SolverConfig cfg;
  cfg.lambda1 = opt.lambda1;
  cfg.lambda2 = opt.lambda2;
  cfg.max_iters = opt.iters;
  if (opt.step > 0.0) cfg.initial_step = opt.step;
  cfg.backtrack_shrink = opt.shrink;
  if (opt.tol > 0.0) cfg.tol = opt.tol;
  cfg.threads = opt.threads;

  SolverReport report = deconvolve(model, rf, cfg);

  const std::string recon_path = (fs::path(opt.out_dir) / "recon.axt").string();
  const std::string trace_path = (fs::path(opt.out_dir) / "trace.csv").string();
  write_image_tensor(recon_path, report.estimate, "trf");
  {
    std::ofstream os(trace_path);
    if (!os) throw std::runtime_error("cannot open " + trace_path);
    write_trace_csv(os, report);
  }

  Manifest m;
  m.set("command", "deconvolve");
  m.set("rf-file", opt.rf_file);
  if (!opt.stack_file.empty()) {
    m.set("stack-file", opt.stack_file);
  } else {
    record_kernel_flags(m, opt.kf, true);
  }
  m.set("pad-mode", opt.pad_mode);
  m.set_double("lambda1", opt.lambda1);
  m.set_double("lambda2", opt.lambda2);
  m.set_int("iters", opt.iters);
  if (opt.step > 0.0) m.set_double("step", opt.step);
  m.set_double("shrink", opt.shrink);
  if (opt.tol > 0.0) m.set_double("tol", opt.tol);
  m.set_int("invariant-kernel", opt.invariant_kernel);
  m.set_int("threads", opt.threads);
  m.set_int("deterministic", opt.deterministic ? 1 : 0);
  m.set("recon-file", recon_path);
  m.set("trace-file", trace_path);
  m.save((fs::path(opt.out_dir) / "manifest-deconvolve.txt").string());

  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", report.objective_trace.empty()
                                               ? report.initial_objective
                                               : report.objective_trace.back());
  std::cout << "wrote " << recon_path << " (" << report.iterations
            << " iterations, final objective " << buf << ")\n";
  return 0;
}

int cmd_verify(std::uint64_t seed, int trials, const verify::Sizes& sz) {
  auto results = verify::run_identity_suite(seed, trials, sz);
  verify::print_results(std::cout, results);
  if (!verify::all_passed(results)) {
    std::cout << "verification FAILED\n";
    return 1;
  }
  std::cout << "verification passed\n";
  return 0;
}

int cmd_bmode(const std::string& in, const std::string& out, double dr) {
  write_pgm(out, bmode_render(read_image_tensor(in), dr));
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_metrics(const std::string& ref_path, const std::string& est_path) {
  Image ref = read_image_tensor(ref_path);
  Image est = read_image_tensor(est_path);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "nrmse=%.10g psnr=%.10g", nrmse(ref, est),
                psnr(ref, est));
  std::cout << buf << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axially-variant kernel ultrasound imaging toolkit"};
  app.require_subcommand(1);

  // kernels
  KernelFlags kernels_kf;
  std::string kernels_out = "stack.axt";
  std::string kernels_preview;
  CLI::App* kernels = app.add_subcommand("kernels", "Generate the depth-varying kernel stack");
  add_kernel_flags(kernels, kernels_kf, false);
  kernels->add_option("--out", kernels_out, "Output kernel-stack tensor");
  kernels->add_option("--preview", kernels_preview,
                      "PGM strip of kernel envelopes at 20 regularly spaced depths");

  // simulate
  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate an observation from a reflectivity image");
  add_kernel_flags(simulate, sim.kf, true);
  simulate->add_option("--map", sim.map, "Built-in intensity map (gradient|disks|wedge|points|phantom)");
  simulate->add_option("--map-file", sim.map_file, "Intensity map tensor")->excludes("--map");
  simulate->add_option("--trf-file", sim.trf_file, "Use an existing reflectivity tensor");
  simulate->add_option("--pad-mode", sim.pad_mode, "zero|replicate|symmetric|circular");
  simulate->add_option("--snr-db", sim.snr_db, "Observation SNR in dB");
  simulate->add_flag("--no-noise", sim.no_noise, "Skip the noise term");
  simulate->add_option("--seed", sim.seed, "Random seed");
  simulate->add_option("--scatter-coarse", sim.scatter_coarse,
                       "Scatterer grid coarsening; >1 interpolates a coarse grid")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trf-scale", sim.trf_scale, "Scatterer amplitude scale");
  simulate->add_option("--threads", sim.threads, "Operator threads")->check(CLI::PositiveNumber);
  simulate->add_flag("--deterministic", sim.deterministic,
                     "Accepted for interface stability; results are always bit-reproducible");
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();
  simulate->add_option("--manifest", sim.manifest_path, "Load settings from a manifest");

  // deconvolve
  DeconvolveOptions dec;
  CLI::App* deconv = app.add_subcommand("deconvolve", "Reconstruct the reflectivity from an observation");
  add_kernel_flags(deconv, dec.kf, true);
  deconv->add_option("--rf", dec.rf_file, "Observation tensor");
  deconv->add_option("--stack", dec.stack_file, "Kernel-stack tensor (instead of kernel parameters)");
  deconv->add_option("--pad-mode", dec.pad_mode, "zero|replicate|symmetric|circular");
  deconv->add_option("--lambda1", dec.lambda1, "l1 weight");
  deconv->add_option("--lambda2", dec.lambda2, "squared-l2 weight");
  deconv->add_option("--iters", dec.iters, "Iteration budget")->check(CLI::PositiveNumber);
  deconv->add_option("--step", dec.step, "Initial step size (0 = auto)");
  deconv->add_option("--shrink", dec.shrink, "Backtracking shrink factor");
  deconv->add_option("--tol", dec.tol, "Relative objective-change stop (0 = fixed budget)");
  deconv->add_option("--invariant-kernel", dec.invariant_kernel,
                     "Use the kernel of this 1-based row for all depths (0 = off)");
  deconv->add_option("--threads", dec.threads, "Operator threads")->check(CLI::PositiveNumber);
  deconv->add_flag("--deterministic", dec.deterministic,
                   "Accepted for interface stability; results are always bit-reproducible");
  deconv->add_option("--out-dir", dec.out_dir, "Output directory")->required();
  deconv->add_option("--manifest", dec.manifest_path, "Load settings from a manifest");

  // verify
  std::uint64_t verify_seed = 1;
  int verify_trials = 50;
  verify::Sizes sizes;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the randomized operator identity suite");
  verify_cmd->add_option("--seed", verify_seed, "Random seed");
  verify_cmd->add_option("--trials", verify_trials, "Instances per check")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-rows", sizes.max_rows, "Maximum image height")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-cols", sizes.max_cols, "Maximum image width")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-m-r", sizes.max_row_radius, "Maximum axial radius")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-n-r", sizes.max_col_radius, "Maximum lateral radius")->check(CLI::NonNegativeNumber);

  // bmode
  std::string bmode_in, bmode_out = "out.pgm";
  double bmode_dr = 40.0;
  CLI::App* bmode = app.add_subcommand("bmode", "Render an RF tensor as a B-mode PGM image");
  bmode->add_option("--in", bmode_in, "Input tensor")->required();
  bmode->add_option("--out", bmode_out, "Output PGM");
  bmode->add_option("--dr", bmode_dr, "Dynamic range in dB");

  // metrics
  std::string metrics_ref, metrics_est;
  CLI::App* metrics = app.add_subcommand("metrics", "Print nrmse and psnr of an estimate against a reference");
  metrics->add_option("--ref", metrics_ref, "Reference tensor")->required();
  metrics->add_option("--est", metrics_est, "Estimate tensor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kernels->parsed()) return cmd_kernels(kernels_kf, kernels_out, kernels_preview);
    if (simulate->parsed()) return cmd_simulate(std::move(sim), simulate);
    if (deconv->parsed()) return cmd_deconvolve(std::move(dec), deconv);
    if (verify_cmd->parsed()) return cmd_verify(verify_seed, verify_trials, sizes);
    if (bmode->parsed()) return cmd_bmode(bmode_in, bmode_out, bmode_dr);
    if (metrics->parsed()) return cmd_metrics(metrics_ref, metrics_est);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
