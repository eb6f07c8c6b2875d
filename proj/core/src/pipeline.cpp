#include "maup/pipeline.hpp"

#include <fstream>

#include <json.hpp>

#include "maup/errors.hpp"
#include "maup/evaluation.hpp"
#include "maup/random.hpp"
#include "maup/tensor_io.hpp"

namespace maup {
namespace {

template <class Fn>
auto in_stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

PromptExport make_export(const EpisodeResult& r, const PromptConfig& cfg) {
  PromptExport e;
  for (const auto& t : r.prompts.positives) {
    ExportPoint p = to_image(t.point, cfg.scale, 1);
    p.source = t.source;
    e.positives.push_back(p);
  }
  for (const auto& n : r.prompts.negatives) e.negatives.push_back(to_image(n, cfg.scale, 0));
  e.k_used = r.prompts.k_used;
  if (r.positive.q_mean) e.tau_mean = r.positive.q_mean->threshold;
  if (r.positive.q_uncert) e.tau_uncert = r.positive.q_uncert->threshold;
  if (r.negative_prompts.q_neg) e.tau_neg = r.negative_prompts.q_neg->threshold;
  e.n_f = static_cast<int>(r.partition.size());
  e.seed = cfg.seed;
  e.scale = cfg.scale;
  e.negative_status = r.prompts.negative_status;
  return e;
}

}  // namespace

EpisodeResult run_episode(const EpisodeInputs& in, const PromptConfig& cfg) {
  in_stage("config", [&] { cfg.validate(); });
  in_stage("input", [&] {
    if (!same_grid(in.support_features, in.support_mask)) {
      throw ShapeError("support features and support mask grids differ");
    }
    if (in.support_features.channels() != in.query_features.channels()) {
      throw ShapeError("support and query channel counts differ");
    }
  });

  EpisodeResult r;
  r.partition = in_stage("RPG", [&] {
    if (in.support_mask.empty()) throw EmptyMaskError("empty foreground");
    return rpg_partition(in.support_mask, cfg.n_f, derive_seed(cfg.seed, Stream::partition));
  });
  const PrototypeSet prototypes = in_stage("prototypes", [&] {
    return regional_prototypes(in.support_features, r.partition, cfg.threads);
  });
  in_stage("similarity", [&] {
    const SimilarityStack stack = similarity_stack(in.query_features, prototypes, cfg.threads);
    r.mean = mean_map(stack);
    r.uncertainty = uncertainty_map(stack, r.mean);
  });

  r.negative_prompts.status = NegativeStatus::disabled;
  if (cfg.np) {
    in_stage("periphery", [&] {
      const BitMask ring =
          periphery_mask(in.support_mask, StructuringElement::disk(cfg.radius));
      if (ring.empty()) {
        r.negative_prompts.status = NegativeStatus::periphery_empty;
        return;
      }
      r.negative = cosine_map(in.query_features, periphery_prototype(in.support_features, ring));
    });
  }

  in_stage("prompting", [&] {
    r.positive = positive_prompts(r.mean, r.uncertainty, cfg, cfg.seed);
    if (r.negative) {
      const std::vector<PointRC> pos = [&] {
        std::vector<PointRC> v;
        for (const auto& t : r.positive.prompts) v.push_back(t.point);
        return v;
      }();
      r.negative_prompts =
          negative_prompts(*r.negative, pos, cfg.n_neg, cfg.seed, cfg.percentile);
    }
  });

  r.prompts.positives = r.positive.prompts;
  r.prompts.negatives = r.negative_prompts.points;
  r.prompts.k_used = r.positive.k_used;
  r.prompts.seed = cfg.seed;
  r.prompts.scale = cfg.scale;
  r.prompts.negative_status = r.negative_prompts.status;
  r.exported = make_export(r, cfg);
  return r;
}

EpisodeReport run_episode(const EpisodeSpec& spec) {
  EpisodeInputs in = in_stage("load", [&] {
    return EpisodeInputs{load_feature_map(spec.support_feature_path),
                         load_bit_mask(spec.support_mask_path),
                         load_feature_map(spec.query_feature_path)};
  });
  const EpisodeResult r = run_episode(in, spec.config);

  EpisodeReport report;
  report.exported = r.exported;
  in_stage("output", [&] {
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) throw IoError("cannot create " + spec.output_dir.string() + ": " + ec.message());
    write_text(spec.output_dir / "prompts.json", to_canonical_json(r.exported));
    if (spec.heatmaps) {
      write_pgm(r.mean, spec.output_dir / "mean.pgm");
      write_pgm(r.uncertainty, spec.output_dir / "uncertainty.pgm");
      if (r.negative) write_pgm(*r.negative, spec.output_dir / "negative.pgm");
    }
  });

  if (spec.query_gt_mask_path) {
    in_stage("evaluate", [&] {
      const BitMask gt = load_bit_mask(*spec.query_gt_mask_path);
      ScalarMap image;
      if (spec.query_image_path) {
        image = load_scalar_map(*spec.query_image_path);
      } else {
        image = ScalarMap(gt.height(), gt.width());
        for (std::size_t i = 0; i < gt.size(); ++i) image.values()[i] = gt.bits()[i];
      }
      if (!same_grid(image, gt) || !same_grid(image, in.query_features)) {
        throw ShapeError("query ground truth / image do not match the query grid");
      }
      const BitMask pred = surrogate_segment(r.prompts, image, spec.segment_threshold);
      report.dice = dice(pred, gt);
      nlohmann::json j{{"dice", *report.dice},
                       {"threshold", spec.segment_threshold},
                       {"image", spec.query_image_path ? "query-image" : "ground-truth"}};
      write_text(spec.output_dir / "eval.json", j.dump(2) + "\n");
    });
  }
  return report;
}

}  // namespace maup
