#pragma once

// Command-line front end. Kept in a header so the test suite can drive
// run_cli() in-process.
//
// Exit codes: 0 ok, 1 frame size mismatch, 2 bad arguments, 3 I/O or file
// format failure, 4 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "phasemag/phasemag.hpp"

namespace phasemag::cli {

enum ExitCode : int {
  kOk = 0,
  kSizeMismatch = 1,
  kBadArguments = 2,
  kIoFailure = 3,
  kInternal = 4,
};

[[nodiscard]] inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::size_mismatch: return kSizeMismatch;
    case ErrorKind::invalid_argument:
    case ErrorKind::insufficient_data: return kBadArguments;
    case ErrorKind::io:
    case ErrorKind::format: return kIoFailure;
    case ErrorKind::symmetry: return kInternal;
  }
  return kInternal;
}

namespace detail {

inline void require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) {
    phasemag::detail::fail(ErrorKind::invalid_argument, std::string(flag) + " must be finite");
  }
}

// "row,col,radius[,sigma]"
inline CircleSpec parse_circle(const std::string& text, double default_sigma) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!phasemag::detail::parse_number(item, v)) {
      phasemag::detail::fail(ErrorKind::invalid_argument, "--circle: bad number '" + item + "'");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3 && parts.size() != 4) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "--circle expects row,col,radius[,sigma]");
  }
  CircleSpec c{parts[0], parts[1], parts[2], parts.size() == 4 ? parts[3] : default_sigma,
               kMaxIntensity};
  c.validate();
  return c;
}

struct SynthCircleArgs {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> center;
  std::optional<double> radius;
  double sigma = 4.0;
  double peak = kMaxIntensity;
  std::vector<std::string> extra_circles;
  std::string out;
};

inline int synth_circle(const SynthCircleArgs& a, std::ostream& out) {
  phasemag::detail::require_nonempty(a.height, a.width, "synth-circle");
  std::vector<CircleSpec> circles;
  if (!a.radius && a.extra_circles.empty()) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "give --radius or at least one --circle");
  }
  if (a.radius) {
    const double row = a.center.empty() ? static_cast<double>(a.height - 1) / 2.0 : a.center[0];
    const double col = a.center.empty() ? static_cast<double>(a.width - 1) / 2.0 : a.center[1];
    CircleSpec c{row, col, *a.radius, a.sigma, a.peak};
    c.validate();
    circles.push_back(c);
  }
  for (const auto& text : a.extra_circles) circles.push_back(parse_circle(text, a.sigma));
  const Frame frame = quantize(render_circles(a.height, a.width, circles));
  write_frame(frame, a.out);
  out << "wrote " << a.out << " (" << a.height << "x" << a.width << ")\n";
  return kOk;
}

struct ShiftArgs {
  std::string in;
  std::string out;
  std::vector<double> delta;
  bool circular = false;
};

inline int shift(const ShiftArgs& a, std::ostream& out) {
  require_finite(a.delta[0], "--delta");
  require_finite(a.delta[1], "--delta");
  if (a.circular && (a.delta[0] != std::round(a.delta[0]) || a.delta[1] != std::round(a.delta[1]))) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "--circular requires integer --delta");
  }
  const Frame in = read_frame(a.in);
  const Frame shifted =
      a.circular ? circular_shift(in, static_cast<long>(a.delta[0]), static_cast<long>(a.delta[1]))
                 : subpixel_shift(in, {a.delta[0], a.delta[1]});
  write_frame(shifted, a.out);
  out << "wrote " << a.out << "\n";
  return kOk;
}

struct MagnifyPairArgs {
  std::string ref;
  std::string in;
  double alpha = 0.0;
  std::optional<double> mag_floor;
  std::string out;
};

inline int magnify_pair_cmd(const MagnifyPairArgs& a, std::ostream& out) {
  MagnifyParams params{a.alpha, a.mag_floor};
  params.validate();
  const Frame ref = read_frame(a.ref);
  const Frame in = read_frame(a.in);
  const Frame result = magnify_pair(ref, in, params);
  write_frame(result, a.out);
  out << "wrote " << a.out << "\n";
  return kOk;
}

struct SynthVideoArgs {
  std::string preset;
  VideoPreset config;
  std::vector<double> center;
  std::string outdir;
};

inline int synth_video(SynthVideoArgs a, std::ostream& out) {
  VideoPreset cfg = a.preset.empty() ? a.config : damped_oscillation_preset();
  if (a.preset.empty() && !a.center.empty()) {
    cfg.circle.center_row = a.center[0];
    cfg.circle.center_col = a.center[1];
  }
  phasemag::detail::require_nonempty(cfg.height, cfg.width, "synth-video");
  cfg.circle.validate();
  const auto shifts = cfg.shifts();  // validates the motion parameters

  const VideoGenerator gen(cfg.base());
  SequenceWriter writer(a.outdir, cfg.row_motion.fps);
  for (const auto& s : shifts) writer.append(gen.frame(s, Quantization::eight_bit));
  const SequenceManifest m = writer.finish();
  out << "wrote " << m.frame_count << " frames (" << m.height << "x" << m.width << ") to "
      << a.outdir << "\n";
  return kOk;
}

struct MagnifyVideoArgs {
  std::string indir;
  double alpha = 0.0;
  std::string mode = "first";
  std::string outdir;
};

inline int magnify_video(const MagnifyVideoArgs& a, std::ostream& out) {
  MagnifyParams params{a.alpha, std::nullopt};
  params.validate();
  const ReferenceMode mode = a.mode == "previous" ? ReferenceMode::previous : ReferenceMode::first;
  const SequenceManifest m = read_manifest(a.indir);
  if (m.frame_count < 2) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "magnify-video needs at least 2 frames");
  }
  SequenceMagnifier magnifier(params, mode);
  SequenceWriter writer(a.outdir, m.fps);
  for (std::size_t i = 0; i < m.frame_count; ++i) {
    writer.append(magnifier.push(read_sequence_frame(m, i)));
  }
  const SequenceManifest written = writer.finish();
  out << "wrote " << written.frame_count << " magnified frames to " << a.outdir << "\n";
  return kOk;
}

struct ExtractLineArgs {
  std::string indir;
  std::size_t row = 0;
  std::string out;
};

inline int extract_line_cmd(const ExtractLineArgs& a, std::ostream& out) {
  const SequenceManifest m = read_manifest(a.indir);
  if (a.row >= m.height) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "--row " + std::to_string(a.row) +
                                                            " out of range for height " +
                                                            std::to_string(m.height));
  }
  LineTraceBuilder builder(a.row, m.fps);
  for (std::size_t i = 0; i < m.frame_count; ++i) builder.append(read_sequence_frame(m, i));
  const LineTrace trace = std::move(builder).finish();
  write_trace_csv(trace, a.out);
  out << "wrote " << trace.frame_count() << " rows to " << a.out << "\n";
  return kOk;
}

struct EstimateShiftArgs {
  std::string ref;
  std::string in;
  double band = kDefaultBandFraction;
};

inline int estimate_shift_cmd(const EstimateShiftArgs& a, std::ostream& out, std::ostream& err) {
  if (!(a.band > 0.0 && a.band <= 0.5)) {
    phasemag::detail::fail(ErrorKind::invalid_argument, "--band must be in (0, 0.5]");
  }
  const Frame ref = read_frame(a.ref);
  const Frame in = read_frame(a.in);
  const ShiftEstimate est = estimate_shift(ref, in, a.band);
  out << "delta1=" << phasemag::detail::format_number(est.delta.d1)
      << " delta2=" << phasemag::detail::format_number(est.delta.d2)
      << " residual=" << phasemag::detail::format_number(est.residual) << " bins=" << est.bins_used
      << "\n";
  if (!est.reliable()) {
    err << "warning: residual " << phasemag::detail::format_number(est.residual)
        << " rad is large; the frames are probably not related by a global translation\n";
  }
  return kOk;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-based global motion magnification", "phasemag"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  detail::SynthCircleArgs synth_circle_args;
  auto* synth_circle = app.add_subcommand("synth-circle", "Render sigmoid-edged circles to a PGM");
  synth_circle->add_option("--height", synth_circle_args.height, "Image height N")->required();
  synth_circle->add_option("--width", synth_circle_args.width, "Image width M")->required();
  synth_circle->add_option("--center", synth_circle_args.center, "Circle centre ROW COL")
      ->expected(2);
  synth_circle->add_option("--radius", synth_circle_args.radius, "Circle radius (pixels)");
  synth_circle->add_option("--sigma", synth_circle_args.sigma, "Edge softness (pixels)")->capture_default_str();
  synth_circle->add_option("--peak", synth_circle_args.peak, "Peak intensity")->capture_default_str();
  synth_circle->add_option("--circle", synth_circle_args.extra_circles,
                           "Additional circle row,col,radius[,sigma] (repeatable)");
  synth_circle->add_option("--out", synth_circle_args.out, "Output PGM")->required();

  detail::ShiftArgs shift_args;
  auto* shift = app.add_subcommand("shift", "Translate a frame (circular or sub-pixel)");
  shift->add_option("--in", shift_args.in, "Input PGM")->required();
  shift->add_option("--out", shift_args.out, "Output PGM")->required();
  shift->add_option("--delta", shift_args.delta, "Shift D1 D2: out(n,m) = in(n+D1, m+D2)")
      ->expected(2)
      ->required()
      ->allow_extra_args(false);
  shift->add_flag("--circular", shift_args.circular, "Integer index shift instead of spectral");

  detail::MagnifyPairArgs pair_args;
  auto* magnify_pair = app.add_subcommand("magnify-pair", "Magnify the motion between two frames");
  magnify_pair->add_option("--ref", pair_args.ref, "Reference frame (PGM)")->required();
  magnify_pair->add_option("--in", pair_args.in, "Moved frame (PGM)")->required();
  magnify_pair->add_option("--alpha", pair_args.alpha, "Magnification factor")->required();
  magnify_pair->add_option("--mag-floor", pair_args.mag_floor, "Phase-less magnitude threshold");
  magnify_pair->add_option("--out", pair_args.out, "Output PGM")->required();

  detail::SynthVideoArgs video_args;
  auto& vc = video_args.config;
  auto* synth_video = app.add_subcommand("synth-video", "Generate a damped-oscillation sequence");
  auto* preset_opt = synth_video->add_option("--preset", video_args.preset, "Named configuration")
                         ->check(CLI::IsMember({"paper42"}));
  std::vector<CLI::Option*> explicit_opts{
      synth_video->add_option("--height", vc.height, "Frame height")->capture_default_str(),
      synth_video->add_option("--width", vc.width, "Frame width")->capture_default_str(),
      synth_video->add_option("--center", video_args.center, "Circle centre ROW COL")->expected(2),
      synth_video->add_option("--radius", vc.circle.radius, "Circle radius")->capture_default_str(),
      synth_video->add_option("--sigma", vc.circle.sigma, "Edge softness")->capture_default_str(),
      synth_video->add_option("--amplitude", vc.row_motion.amplitude, "Motion amplitude (pixels)")->capture_default_str(),
      synth_video->add_option("--damping", vc.row_motion.damping, "Damping rate (1/s)")->capture_default_str(),
      synth_video->add_option("--frequency", vc.row_motion.frequency, "Oscillation frequency (Hz)")->capture_default_str(),
      synth_video->add_option("--duration", vc.row_motion.duration, "Duration (s)")->capture_default_str(),
      synth_video->add_option("--fps", vc.row_motion.fps, "Frame rate")->capture_default_str(),
  };
  for (auto* opt : explicit_opts) preset_opt->excludes(opt);
  synth_video->add_option("--outdir", video_args.outdir, "Output directory")->required();

  detail::MagnifyVideoArgs mv_args;
  auto* magnify_video = app.add_subcommand("magnify-video", "Magnify a frame sequence");
  magnify_video->add_option("--indir", mv_args.indir, "Input sequence directory")->required();
  magnify_video->add_option("--alpha", mv_args.alpha, "Magnification factor")->required();
  magnify_video->add_option("--mode", mv_args.mode, "Reference frame: first or previous")->capture_default_str()
      ->check(CLI::IsMember({"first", "previous"}));
  magnify_video->add_option("--outdir", mv_args.outdir, "Output directory")->required();

  detail::ExtractLineArgs line_args;
  auto* extract_line = app.add_subcommand("extract-line", "Write one row over time as CSV");
  extract_line->add_option("--indir", line_args.indir, "Sequence directory")->required();
  extract_line->add_option("--row", line_args.row, "Row index")->required();
  extract_line->add_option("--out", line_args.out, "Output CSV")->required();

  detail::EstimateShiftArgs est_args;
  auto* estimate = app.add_subcommand("estimate-shift", "Estimate the global shift between frames");
  estimate->add_option("--ref", est_args.ref, "Reference frame (PGM)")->required();
  estimate->add_option("--in", est_args.in, "Moved frame (PGM)")->required();
  estimate->add_option("--band", est_args.band, "Low-frequency band fraction")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*synth_circle) return detail::synth_circle(synth_circle_args, out);
    if (*shift) return detail::shift(shift_args, out);
    if (*magnify_pair) return detail::magnify_pair_cmd(pair_args, out);
    if (*synth_video) {
      // the column signal shares every parameter except its waveform
      vc.col_motion = vc.row_motion;
      vc.row_motion.waveform = Waveform::sine;
      vc.col_motion.waveform = Waveform::cosine;
      return detail::synth_video(video_args, out);
    }
    if (*magnify_video) return detail::magnify_video(mv_args, out);
    if (*extract_line) return detail::extract_line_cmd(line_args, out);
    if (*estimate) return detail::estimate_shift_cmd(est_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kBadArguments;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"phasemag"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace phasemag::cli
