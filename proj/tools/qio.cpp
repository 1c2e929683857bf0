// Copyright 2026 The qio developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// Command-line surface: decompose, classify, verify, region, examples.
/// Exit codes: 0 success, 1 usage/I-O/parse, 2 channel not incoherent,
/// 3 invalid channel or inconsistent numerics.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qio/qio.hpp"

namespace {

using namespace qio;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotIncoherent = 2;
constexpr int kExitInvalidChannel = 3;

void emit(const std::string& path, const std::string& text) {
  if (path == "-")
    std::fputs(text.c_str(), stdout);
  else
    write_text_file(path, text);
}

std::string slurp_input(const std::string& path) {
  if (path != "-") return read_text_file(path);
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

struct ChannelSource {
  std::string input = "-";
  std::string example;
  double theta = 1.0;
  double phi = 0.0;

  QubitChannel load() const {
    if (!example.empty()) {
      try {
        return gallery(example, theta, phi);
      } catch (const ValidationError& err) {
        throw ParseError(err.what());  // unknown names are usage errors
      }
    }
    return channel_from_json(parse_json_text(slurp_input(input)));
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("input", input, "channel JSON path, or - for stdin");
    cmd->add_option("--example", example,
                    "use a named gallery channel instead of a file (eq14, eq15, "
                    "eq17, flattening, qutrit_permutations, identity, dephasing)");
    cmd->add_option("--theta", theta, "theta parameter for --example eq15");
    cmd->add_option("--phi", phi, "phi parameter for --example eq15");
  }
};

int cmd_decompose(const ChannelSource& src, const std::string& output, double tolerance) {
  const QubitChannel ch = src.load();
  if (ch.dim() != 2) {
    std::fprintf(stderr, "decompose handles qubit channels only\n");
    return kExitUsage;
  }
  const DecompositionSolution sol = decompose_io(choi(ch), tolerance);
  emit(output, decomposition_to_json(sol).dump(2) + "\n");
  return kExitOk;
}

int cmd_classify(const ChannelSource& src, const std::string& output) {
  const ChannelReport rep = report(src.load());
  emit(output, report_to_json(rep).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const ChannelSource& src, const std::string& output, double tolerance) {
  // Work on the raw operator list so completeness failures are reported
  // rather than rejected at construction.
  std::vector<CMatrix> ops;
  int dim = 2;
  if (!src.example.empty()) {
    const QubitChannel ch = src.load();
    dim = ch.dim();
    for (const auto& op : ch.operators()) ops.push_back(op.matrix);
  } else {
    const json j = parse_json_text(slurp_input(src.input));
    ops = kraus_list_from_json(j);
    dim = j["dim"].get<int>();
  }

  json rep;
  std::vector<std::string> failures;
  CMatrix sum(dim, dim);
  for (const auto& k : ops) sum = sum + k.adjoint() * k;
  const double residual = max_abs_diff(sum, CMatrix::identity(dim));
  rep["completeness_residual"] = residual;
  {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2g", residual);
    if (residual > kCompletenessGate)
      failures.push_back(std::string("completeness residual ") + buf);
  }

  if (dim == 2) {
    json patterns = json::array();
    bool incoherent = true;
    for (const auto& k : ops) {
      const IncoherencePattern pat = classify_pattern(k, tolerance);
      patterns.push_back(to_string(pat.tag));
      incoherent = incoherent && pat.tag != PatternTag::kNotIncoherent;
    }
    rep["patterns"] = std::move(patterns);
    rep["all_operators_incoherent"] = incoherent;
  }

  if (failures.empty()) {
    const QubitChannel ch(ops);
    const ChoiMatrix m = choi(ch);
    const auto eig = hermitian_eigen(m.matrix());
    rep["choi_psd_margin"] = eig.values.back();
    if (dim == 2) {
      rep["is_io_structure"] = io_membership(m, tolerance);
      rep["is_sio_structure"] = is_sio_choi(m, tolerance);
    }
  }

  rep["valid"] = failures.empty();
  rep["failures"] = failures;
  emit(output, rep.dump(2) + "\n");
  if (!failures.empty()) {
    for (const auto& f : failures) std::fprintf(stderr, "%s\n", f.c_str());
    return kExitInvalidChannel;
  }
  return kExitOk;
}

int cmd_region(const std::string& initial_text, size_t count, uint64_t seed,
               const std::string& output, const std::string& svg_path) {
  BlochVector initial;
  if (std::sscanf(initial_text.c_str(), "%lf,%lf,%lf", &initial.x, &initial.y,
                  &initial.z) != 3) {
    std::fprintf(stderr, "--initial expects x,y,z\n");
    return kExitUsage;
  }
  if (initial.norm() > 1.0 + 1e-12) {
    std::fprintf(stderr, "initial Bloch vector lies outside the unit ball (norm %g)\n",
                 initial.norm());
    return kExitUsage;
  }
  SamplerConfig cfg;
  cfg.seed = seed;
  cfg.count = count;
  const RegionResult region = achievable_region(cfg, initial);
  emit(output, region_to_csv(region));
  if (!svg_path.empty()) write_text_file(svg_path, region_to_svg(region));
  return kExitOk;
}

int cmd_examples(const std::string& name, double theta, double phi,
                 const std::string& output) {
  QubitChannel ch = [&]() -> QubitChannel {
    try {
      return gallery(name, theta, phi);
    } catch (const ValidationError& err) {
      throw ParseError(err.what());
    }
  }();
  emit(output, channel_to_json(ch).dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incoherent qubit channel toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  double tolerance = 1e-9;
  app.add_option("--tolerance", tolerance, "numeric tolerance (default 1e-9)")
      ->check(CLI::Range(1e-300, 1e-3));

  ChannelSource dec_src, cls_src, ver_src;
  std::string dec_out = "-", cls_out = "-", ver_out = "-", reg_out = "-", ex_out = "-";

  CLI::App* dec = app.add_subcommand(
      "decompose", "split an incoherent channel into at most four incoherent operators");
  dec_src.attach(dec);
  dec->add_option("--output", dec_out, "output path (- for stdout)");

  CLI::App* cls = app.add_subcommand("classify", "membership flags and rank report");
  cls_src.attach(cls);
  cls->add_option("--output", cls_out, "output path (- for stdout)");

  CLI::App* ver = app.add_subcommand("verify", "validate an operator list");
  ver_src.attach(ver);
  ver->add_option("--output", ver_out, "output path (- for stdout)");

  CLI::App* reg = app.add_subcommand(
      "region", "Monte Carlo image of an initial state under random incoherent channels");
  std::string initial_text = "0.5,0,0.5";
  size_t count = 100000;
  uint64_t seed = 0;
  std::string svg_path;
  reg->add_option("--initial", initial_text, "initial Bloch vector x,y,z");
  reg->add_option("--count", count, "number of sampled channels");
  reg->add_option("--seed", seed, "random seed");
  reg->add_option("--output", reg_out, "CSV output path (- for stdout)");
  reg->add_option("--svg", svg_path, "also render an SVG scatter to this path");

  CLI::App* ex = app.add_subcommand("examples", "write a named gallery channel as JSON");
  std::string ex_name;
  double ex_theta = 1.0, ex_phi = 0.0;
  ex->add_option("name", ex_name, "gallery channel name")->required();
  ex->add_option("--theta", ex_theta, "theta for eq15");
  ex->add_option("--phi", ex_phi, "phi for eq15");
  ex->add_option("--output", ex_out, "output path (- for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (dec->parsed()) return cmd_decompose(dec_src, dec_out, tolerance);
    if (cls->parsed()) return cmd_classify(cls_src, cls_out);
    if (ver->parsed()) return cmd_verify(ver_src, ver_out, tolerance);
    if (reg->parsed()) return cmd_region(initial_text, count, seed, reg_out, svg_path);
    if (ex->parsed()) return cmd_examples(ex_name, ex_theta, ex_phi, ex_out);
  } catch (const qio::NotIncoherentError& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return kExitNotIncoherent;
  } catch (const qio::ParseError& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return kExitUsage;
  } catch (const qio::Error& err) {
    // validation, constraint and root failures: the channel is unusable
    std::fprintf(stderr, "%s\n", err.what());
    return kExitInvalidChannel;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "%s\n", err.what());
    return kExitUsage;
  }
  return kExitUsage;
}
