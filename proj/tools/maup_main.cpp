// maup: point-prompt generation from support/query feature maps.
//
//   maup run     --support-feat F --support-mask M --query-feat Q --out DIR [...]
//   maup phantom --family disk --seed N --out DIR
//   maup ablate  --config sweep.toml --out report.csv
//
// Exit codes: 0 ok, 1 usage, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "maup/ablation.hpp"
#include "maup/errors.hpp"
#include "maup/phantom.hpp"
#include "maup/pipeline.hpp"
#include "maup/tensor_io.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

namespace fs = std::filesystem;

struct RunArgs {
  std::string support_feat;
  std::string support_mask;
  std::string query_feat;
  std::string query_gt;
  std::string query_image;
  std::string out;
  bool heatmaps = false;
  bool no_mmp = false;
  bool no_ump = false;
  bool no_np = false;
  double threshold = 0.5;
  maup::PromptConfig cfg;
};

struct PhantomArgs {
  std::string family = "disk";
  std::uint64_t seed = 0;
  std::string out;
  std::optional<int> size;
  std::optional<double> contrast;
  std::optional<double> noise;
  std::optional<int> channels;
};

struct AblateArgs {
  std::string config;
  std::string out;
  std::optional<int> threads;
};

void add_run(CLI::App& app, RunArgs& a) {
  auto* run = app.add_subcommand("run", "Generate prompts for one support/query episode");
  run->add_option("--support-feat", a.support_feat, "Support feature map (C x H x W)")->required();
  run->add_option("--support-mask", a.support_mask, "Support mask (H x W, u8)")->required();
  run->add_option("--query-feat", a.query_feat, "Query feature map")->required();
  run->add_option("--query-gt", a.query_gt, "Query ground-truth mask; enables Dice evaluation");
  run->add_option("--query-image", a.query_image,
                  "Query intensity map for the surrogate segmenter (default: the ground truth)");
  run->add_option("--out", a.out, "Output directory")->required();
  run->add_flag("--heatmaps", a.heatmaps, "Write mean/uncertainty/negative maps as PGM");
  run->add_option("--seed", a.cfg.seed, "RNG seed")->capture_default_str();
  run->add_option("--nf", a.cfg.n_f, "Number of support regions")->capture_default_str();
  run->add_option("--gamma", a.cfg.gamma, "Complexity scaling for k")->capture_default_str();
  run->add_option("--nmin", a.cfg.n_min, "Minimum mean-map prompts")->capture_default_str();
  run->add_option("--nmax", a.cfg.n_max, "Maximum mean-map prompts")->capture_default_str();
  run->add_option("--nneg", a.cfg.n_neg, "Negative prompts")->capture_default_str();
  run->add_option("--radius", a.cfg.radius, "Periphery dilation radius")->capture_default_str();
  run->add_option("--pct", a.cfg.percentile, "Candidate percentile")->capture_default_str();
  run->add_option("--scale", a.cfg.scale, "Grid-to-image scale factor")->capture_default_str();
  run->add_option("--threads", a.cfg.threads, "Worker threads")->capture_default_str();
  run->add_option("--threshold", a.threshold, "Surrogate segmenter threshold")->capture_default_str();
  run->add_flag("--no-mmp", a.no_mmp, "Disable mean-map prompts");
  run->add_flag("--no-ump", a.no_ump, "Disable uncertainty prompts");
  run->add_flag("--no-np", a.no_np, "Disable negative prompts");
}

void add_phantom(CLI::App& app, PhantomArgs& a) {
  auto* ph = app.add_subcommand("phantom", "Write a synthetic support/query episode");
  ph->add_option("--family", a.family, "disk | ellipse | two-lobe | annulus")->capture_default_str();
  ph->add_option("--seed", a.seed, "RNG seed")->capture_default_str();
  ph->add_option("--out", a.out, "Output directory")->required();
  ph->add_option("--size", a.size, "Grid side length");
  ph->add_option("--contrast", a.contrast, "Organ / tissue separation in (0, 1]");
  ph->add_option("--noise", a.noise, "Gaussian noise level");
  ph->add_option("--channels", a.channels, "Feature channels");
}

void add_ablate(CLI::App& app, AblateArgs& a) {
  auto* ab = app.add_subcommand("ablate", "Run a prompting-path / N_f sweep on phantoms");
  ab->add_option("--config", a.config, "Flat key = value sweep file")->required();
  ab->add_option("--out", a.out, "CSV report path")->required();
  ab->add_option("--threads", a.threads, "Concurrent episodes (overrides the config)");
}

int do_run(RunArgs a) {
  a.cfg.mmp = !a.no_mmp;
  a.cfg.ump = !a.no_ump;
  a.cfg.np = !a.no_np;
  a.cfg.validate();

  maup::EpisodeSpec spec;
  spec.support_feature_path = a.support_feat;
  spec.support_mask_path = a.support_mask;
  spec.query_feature_path = a.query_feat;
  if (!a.query_gt.empty()) spec.query_gt_mask_path = a.query_gt;
  if (!a.query_image.empty()) spec.query_image_path = a.query_image;
  spec.config = a.cfg;
  spec.output_dir = a.out;
  spec.heatmaps = a.heatmaps;
  spec.segment_threshold = a.threshold;

  const auto report = maup::run_episode(spec);
  std::cout << "positives " << report.exported.positives.size() << ", negatives "
            << report.exported.negatives.size() << ", k " << report.exported.k_used << " -> "
            << (fs::path(a.out) / "prompts.json").string() << "\n";
  if (report.dice) std::cout << "dice " << *report.dice << "\n";
  return 0;
}

int do_phantom(const PhantomArgs& a) {
  maup::PhantomSpec spec = maup::phantom_preset(maup::parse_family(a.family), a.seed);
  if (a.size) spec.size = *a.size;
  if (a.contrast) spec.contrast = *a.contrast;
  if (a.noise) spec.noise = *a.noise;
  if (a.channels) spec.channels = *a.channels;
  const maup::Phantom p = maup::generate_phantom(spec);

  const fs::path dir = a.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw maup::IoError("cannot create " + dir.string() + ": " + ec.message());
  maup::save_tensor(p.support.features, dir / "support_feat.maup");
  maup::save_tensor(p.support.mask, dir / "support_mask.maup");
  maup::save_tensor(p.query.features, dir / "query_feat.maup");
  maup::save_tensor(p.query.mask, dir / "query_gt.maup");
  maup::save_tensor(p.query.image, dir / "query_image.maup");
  std::cout << "wrote " << maup::to_string(spec.family) << " phantom (seed " << spec.seed
            << ") to " << dir.string() << "\n";
  return 0;
}

int do_ablate(const AblateArgs& a) {
  maup::SweepConfig cfg = maup::load_sweep_config(a.config);
  if (a.threads) cfg.threads = *a.threads;
  if (cfg.threads < 1) throw maup::ConfigError("threads must be >= 1");
  const auto rows = maup::ablation_run(cfg);

  std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
  if (!out) throw maup::IoError("cannot write " + a.out);
  out << maup::format_csv(rows);
  if (!out) throw maup::IoError("write failed for " + a.out);
  std::cout << maup::summary_table(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-center adaptive uncertainty-aware point prompting"};
  app.require_subcommand(1);
  RunArgs run_args;
  PhantomArgs phantom_args;
  AblateArgs ablate_args;
  add_run(app, run_args);
  add_phantom(app, phantom_args);
  add_ablate(app, ablate_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("run")) return do_run(run_args);
    if (app.got_subcommand("phantom")) return do_phantom(phantom_args);
    return do_ablate(ablate_args);
  } catch (const maup::ConfigError& e) {
    std::cerr << "maup: " << e.what() << "\n";
    return kExitUsage;
  } catch (const maup::Error& e) {
    std::cerr << "maup: " << e.what() << "\n";
    return kExitData;
  }
}
