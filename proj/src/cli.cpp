// Copyright 2026 The qpebt Authors
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

#include "qpebt/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "example_reports.hpp"
#include "qpebt/json_io.hpp"
#include "qpebt/multipartite.hpp"

namespace qpebt::cli {

using json = nlohmann::json;

namespace {

struct Options {
  Tolerances tol;
  bool pretty = false;
  bool timing = false;

  std::string file;
  std::optional<std::vector<int>> dims;
  std::optional<int> r;
  bool rs = false;

  std::string example;
  int d = 2;
  std::optional<double> f;
  std::optional<double> lambda;
  std::vector<double> p;
  double mu = 1.0;
  int cut = 1;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot open " + path);
  buf << file.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

std::string exact_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void emit(std::ostream& out, const json& j, bool pretty) {
  out << (pretty ? j.dump(2) : j.dump()) << '\n';
}

json tolerances_json(const Tolerances& tol) {
  return {{"rank_rel", tol.rank_rel}, {"psd_abs", tol.psd_abs}};
}

json run_report(const std::vector<std::string>& args, json inputs,
                const Options& opt, json result,
                std::chrono::steady_clock::time_point start) {
  json report = {{"command", join(args)},
                 {"inputs", std::move(inputs)},
                 {"tolerances", tolerances_json(opt.tol)},
                 {"result", std::move(result)}};
  if (opt.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    report["wall_time_s"] = dt.count();
  }
  return report;
}

json cmd_example(const Options& opt) {
  const std::string& name = opt.example;
  if (name == "isotropic") {
    const int d = opt.d;
    return examples::isotropic_report(d, opt.f, opt.lambda, opt.tol);
  }
  if (name == "phi-f") {
    if (!opt.f) throw InvalidInput("example phi-f: needs --f");
    return examples::phi_f_report(opt.d, *opt.f, opt.tol);
  }
  if (name == "phi-lambda") {
    if (!opt.lambda) throw InvalidInput("example phi-lambda: needs --lambda");
    return examples::phi_lambda_report(opt.d, *opt.lambda, opt.tol);
  }
  if (name == "mixed-unitary") {
    if (opt.p.empty()) throw InvalidInput("example mixed-unitary: needs --p");
    return examples::mixed_unitary_report(opt.d, opt.p, opt.mu, opt.tol);
  }
  if (name == "ghz") return examples::three_qubit_report(ghz(), opt.cut, opt.tol);
  if (name == "w") return examples::three_qubit_report(w_state(), opt.cut, opt.tol);
  throw InvalidInput("unknown example " + name);
}

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> words;
  for (std::string w; is >> w;) words.push_back(w);
  return words;
}

json cmd_batch(const std::string& list_text, const Options& opt) {
  std::vector<std::vector<std::string>> entries;
  std::istringstream lines(list_text);
  for (std::string line; std::getline(lines, line);) {
    auto words = split_words(line);
    if (words.empty() || words.front().starts_with('#')) continue;
    entries.push_back(std::move(words));
  }

  struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
  };
  std::vector<Outcome> outcomes(entries.size());
  const long n = static_cast<long>(entries.size());
  // Entries are independent; results are collected by index so the output
  // order is the list order.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto& words = entries[i];
    if (words.front() == "batch") {
      outcomes[i] = {kInvalidInput, "", "nested batch is not allowed"};
      continue;
    }
    std::vector<std::string> args = {"--tol-rank", exact_double(opt.tol.rank_rel),
                                     "--tol-psd", exact_double(opt.tol.psd_abs)};
    args.insert(args.end(), words.begin(), words.end());
    std::istringstream no_input;
    std::ostringstream out, err;
    const int code = run(args, no_input, out, err);
    outcomes[i] = {code, out.str(), err.str()};
  }

  json result = json::array();
  for (long i = 0; i < n; ++i) {
    json entry = {{"args", join(entries[i])}, {"exit_code", outcomes[i].code}};
    if (outcomes[i].code == kOk) {
      entry["output"] = json::parse(outcomes[i].out);
    } else {
      std::string msg = outcomes[i].err;
      while (!msg.empty() && (msg.back() == '\n' || msg.back() == '\r')) msg.pop_back();
      entry["error"] = msg;
    }
    result.push_back(std::move(entry));
  }
  return result;
}

}  // namespace

std::string digest(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw NumericalFailure("sha256 digest failed");
  std::ostringstream os;
  os << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
  return os.str();
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options opt;

  CLI::App app{"Schmidt-number analysis of quantum channels and states", "qpebt"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol-rank", opt.tol.rank_rel, "relative singular-value cutoff")
      ->envname("QPEBT_TOL_RANK")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--tol-psd", opt.tol.psd_abs, "eigenvalue floor scale")
      ->envname("QPEBT_TOL_PSD")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_flag("--pretty", opt.pretty, "indent JSON output");
  app.add_flag("--timing", opt.timing, "add wall_time_s to run reports");

  auto* choi_cmd = app.add_subcommand("choi", "Choi state of a channel file");
  choi_cmd->add_option("channel", opt.file, "channel JSON, - for stdin")->required();

  auto* kraus_cmd = app.add_subcommand("kraus", "canonical Kraus set of a Choi state file");
  kraus_cmd->add_option("choi", opt.file, "Choi state JSON, - for stdin")->required();

  auto* sn_cmd = app.add_subcommand("sn", "Schmidt-number bounds of a state file");
  sn_cmd->add_option("state", opt.file, "state JSON, - for stdin")->required();
  sn_cmd->add_option("--dims", opt.dims, "subsystem dimensions, e.g. 3,3")->delimiter(',');

  auto* classify_cmd = app.add_subcommand("classify", "r-PEBT / (r,s)-CPT classification");
  classify_cmd->add_option("channel", opt.file, "channel JSON, - for stdin")->required();
  classify_cmd->add_option("--r", opt.r, "Schmidt-number threshold");
  classify_cmd->add_flag("--rs", opt.rs, "report the (r,s) classification");

  auto* example_cmd = app.add_subcommand("example", "reproduce a named worked example");
  example_cmd->add_option("name", opt.example)
      ->required()
      ->check(CLI::IsMember({"isotropic", "phi-f", "phi-lambda", "mixed-unitary", "ghz", "w"}));
  example_cmd->add_option("--d", opt.d, "local dimension")->check(CLI::Range(2, 16));
  example_cmd->add_option("--f", opt.f, "fidelity with the maximally entangled state");
  example_cmd->add_option("--lambda", opt.lambda, "isotropic mixing parameter");
  example_cmd->add_option("--p", opt.p, "probabilities over the Weyl unitaries")->delimiter(',');
  example_cmd->add_option("--mu", opt.mu, "reduction-map parameter");
  example_cmd->add_option("--cut", opt.cut, "parties on the A side");

  auto* batch_cmd = app.add_subcommand("batch", "run the command lines listed in a file");
  batch_cmd->add_option("list", opt.file, "one command line per row, - for stdin")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("qpebt");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    opt.tol.validate();
    if (*choi_cmd) {
      const auto phi = json_io::channel_from_json(json_io::parse(read_input(opt.file, in)));
      emit(out, json_io::choi_to_json(choi(phi, opt.tol)), opt.pretty);
    } else if (*kraus_cmd) {
      const auto c = json_io::choi_from_json(json_io::parse(read_input(opt.file, in)), opt.tol);
      emit(out, json_io::channel_to_json(kraus_from_choi(c, opt.tol)), opt.pretty);
    } else if (*sn_cmd) {
      const auto rho = json_io::density_from_json(json_io::parse(read_input(opt.file, in)),
                                                  opt.dims, opt.tol);
      emit(out, json_io::bounds_to_json(sn_bounds(rho, opt.tol)), opt.pretty);
    } else if (*classify_cmd) {
      if (!opt.r && !opt.rs) throw InvalidInput("classify: needs --r and/or --rs");
      const auto phi = json_io::channel_from_json(json_io::parse(read_input(opt.file, in)));
      json result;
      if (opt.r && opt.rs) {
        result = {{"pebt", json_io::pebt_to_json(classify_pebt(phi, *opt.r, opt.tol))},
                  {"rs", json_io::rs_to_json(classify_rs_cpt(phi, opt.tol))}};
      } else if (opt.r) {
        result = json_io::pebt_to_json(classify_pebt(phi, *opt.r, opt.tol));
      } else {
        result = json_io::rs_to_json(classify_rs_cpt(phi, opt.tol));
      }
      emit(out, result, opt.pretty);
    } else if (*example_cmd) {
      json params = {{"name", opt.example}, {"d", opt.d}, {"mu", opt.mu}, {"cut", opt.cut}};
      if (opt.f) params["f"] = *opt.f;
      if (opt.lambda) params["lambda"] = *opt.lambda;
      if (!opt.p.empty()) params["p"] = opt.p;
      emit(out,
           run_report(args, {{"parameters", std::move(params)}}, opt, cmd_example(opt), start),
           opt.pretty);
    } else if (*batch_cmd) {
      const std::string list = read_input(opt.file, in);
      json inputs = {{opt.file, digest(list)}};
      emit(out, run_report(args, std::move(inputs), opt, cmd_batch(list, opt), start),
           opt.pretty);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace qpebt::cli
