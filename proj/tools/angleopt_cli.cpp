// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end over the libangleopt C interface.

#include <angleopt/angleopt.h>

#include "CLI11.hpp"
#include "json.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kFalsified = 3 };

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(angleopt_status s) {
  switch (s) {
    case ANGLEOPT_OK:
      return kOk;
    case ANGLEOPT_ERROR_VALIDATION:
    case ANGLEOPT_ERROR_DIMENSION:
    case ANGLEOPT_ERROR_INTERNAL:
      return kValidation;
    default:
      return kUsage;
  }
}

void check(angleopt_status s) {
  if (s != ANGLEOPT_OK) throw CliError{exit_code_for(s), angleopt_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { angleopt_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct HandleDeleter {
  void operator()(T* p) const { Free(p); }
};
using Config = std::unique_ptr<angleopt_config, HandleDeleter<angleopt_config, angleopt_config_free>>;
using Params = std::unique_ptr<angleopt_params, HandleDeleter<angleopt_params, angleopt_params_free>>;
using Run = std::unique_ptr<angleopt_run, HandleDeleter<angleopt_run, angleopt_run_free>>;
using Matrix = std::unique_ptr<angleopt_matrix, HandleDeleter<angleopt_matrix, angleopt_matrix_free>>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kUsage, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{kUsage, "cannot write '" + path + "'"};
  out << text;
}

double parse_alpha(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "INF") return INFINITY;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw CliError{kUsage, "alpha must be a number or 'inf', got '" + text + "'"};
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Inline JSON when the argument looks like an object, else a file path.
std::string params_text(const std::string& arg) {
  if (arg.empty()) return {};
  return arg.front() == '{' ? arg : read_file(arg);
}

Params load_params(const std::string& arg, unsigned threads, const std::string& seed) {
  std::string text = params_text(arg);
  angleopt_params* raw = nullptr;
  check(angleopt_params_parse(text.empty() ? nullptr : text.c_str(), &raw));
  Params p(raw);
  if (!seed.empty()) {
    // Re-parse with the seed folded in so the library validates it.
    char* json = nullptr;
    check(angleopt_params_to_json(p.get(), &json));
    std::string merged(OwnedString(json).get());
    merged.pop_back();
    merged += ",\"master_seed\":\"" + seed + "\"}";
    angleopt_params* reparsed = nullptr;
    check(angleopt_params_parse(merged.c_str(), &reparsed));
    p.reset(reparsed);
  }
  if (threads > 0) check(angleopt_params_set_workers(p.get(), threads));
  return p;
}

// Worker count never changes results, so it stays out of the input hash.
std::string params_json(const angleopt_params* p) {
  char* json = nullptr;
  check(angleopt_params_to_json(p, &json));
  nlohmann::json j = nlohmann::json::parse(OwnedString(json).get());
  j.erase("workers");
  return j.dump();
}

std::string run_record(const std::string& command, const std::string& inputs, std::uint64_t seed) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, angleopt_content_hash(inputs.data(), inputs.size()));
  std::ostringstream out;
  out << "{\"command\":\"" << command << "\",\"seed\":" << seed << ",\"input_hash\":\"" << buf << "\"}";
  return out.str();
}

// CSV goes to `out_path` or stdout; the run record and verdict go to stdout
// in the first case and stderr in the second.
void emit(const std::string& csv, const std::string& out_path, const std::string& record,
          const std::string& verdict) {
  std::ostream& info = out_path.empty() ? std::cerr : std::cout;
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_file(out_path, csv);
  }
  info << record << '\n';
  if (!verdict.empty()) info << verdict << '\n';
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_alpha(item));
  }
  if (out.empty()) throw CliError{kUsage, "empty alpha list"};
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"angleopt: energies of unoriented lines on spheres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", angleopt_version());

  std::string config_path;
  std::string alpha_text = "1";
  double orth_tol = 1e-9;
  auto* energy = app.add_subcommand("energy", "Energy E_alpha of a configuration file");
  energy->add_option("config", config_path, "LineConfig JSON file")->required();
  energy->add_option("-a,--alpha", alpha_text, "Kernel exponent (>= 1, or 'inf')");
  energy->add_option("--orth-tol", orth_tol, "Orthogonality tolerance for alpha = inf");

  int max_d = 0;
  int max_n = 0;
  bool as_probability = false;
  std::string splits_text;
  auto* maximizer = app.add_subcommand("maximizer", "Print the conjectured maximizer as JSON");
  maximizer->add_option("d", max_d, "Sphere dimension")->required();
  maximizer->add_option("N", max_n, "Number of particles (ignored with --splits)");
  maximizer->add_flag("--probability", as_probability, "Normalize to a probability measure");
  maximizer->add_option("--splits", splits_text, "Weighted form: a1:b1,a2:b2,... rationals");

  std::vector<int> ledger_args;
  auto* ledger = app.add_subcommand("ledger", "Exact F_{d,n} or F_{d,n,k}");
  ledger->add_option("args", ledger_args, "d n [k]")->required()->expected(2, 3);

  int v_dmax = 6;
  int v_nmax = 40;
  std::string out_path;
  unsigned threads = 0;
  auto* verify = app.add_subcommand("verify", "Sweep the comparison lemma and write a CSV report");
  verify->add_option("d_max", v_dmax)->required();
  verify->add_option("n_max", v_nmax)->required();
  verify->add_option("-o,--out", out_path, "CSV output path (default stdout)");
  verify->add_option("--threads", threads, "Worker count (default ANGLEOPT_THREADS)");

  int o_d = 0;
  int o_n = 0;
  std::string o_alpha;
  std::string params_arg;
  std::string seed;
  std::string config_out;
  auto* optimize = app.add_subcommand("optimize", "Multistart search at one finite alpha");
  optimize->add_option("d", o_d)->required();
  optimize->add_option("N", o_n)->required();
  optimize->add_option("alpha", o_alpha)->required();
  optimize->add_option("-p,--params", params_arg, "Optimizer parameters (JSON file or inline object)");
  optimize->add_option("--seed", seed, "Override master_seed");
  optimize->add_option("-o,--out", out_path, "CSV output path (default stdout)");
  optimize->add_option("--config-out", config_out, "Write the best configuration as JSON");
  optimize->add_option("--threads", threads, "Worker count (default ANGLEOPT_THREADS)");

  std::string alphas_text;
  auto* sweep = app.add_subcommand("sweep", "Multistart search over a list of alphas");
  sweep->add_option("d", o_d)->required();
  sweep->add_option("N", o_n)->required();
  sweep->add_option("--alphas", alphas_text, "Comma-separated ascending alphas")->required();
  sweep->add_option("-p,--params", params_arg, "Optimizer parameters (JSON file or inline object)");
  sweep->add_option("--seed", seed, "Override master_seed");
  sweep->add_option("-o,--out", out_path, "CSV output path (default stdout)");
  sweep->add_option("--threads", threads, "Worker count (default ANGLEOPT_THREADS)");

  std::string matrix_path;
  std::string sense_text = "max";
  auto* qp = app.add_subcommand("qp", "Exact extremum of (1/2) x^T A x on the simplex");
  qp->add_option("matrix", matrix_path, "JSON 2-D array of \"num/den\" strings")->required();
  qp->add_option("--sense", sense_text, "max or min")->check(CLI::IsMember({"max", "min"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*energy) {
      angleopt_config* raw = nullptr;
      check(angleopt_config_parse(read_file(config_path).c_str(), &raw));
      Config cfg(raw);
      double value = 0;
      char* exact = nullptr;
      check(angleopt_energy(cfg.get(), parse_alpha(alpha_text), orth_tol, &value, &exact));
      OwnedString owned(exact);
      std::cout << (exact ? std::string(exact) : format_double(value)) << '\n';
    } else if (*maximizer) {
      angleopt_config* raw = nullptr;
      if (!splits_text.empty()) {
        std::vector<std::string> a;
        std::vector<std::string> b;
        std::stringstream ss(splits_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos) throw CliError{kUsage, "splits must look like a:b,a:b,..."};
          a.push_back(item.substr(0, colon));
          b.push_back(item.substr(colon + 1));
        }
        std::vector<const char*> pa;
        std::vector<const char*> pb;
        for (std::size_t i = 0; i < a.size(); ++i) {
          pa.push_back(a[i].c_str());
          pb.push_back(b[i].c_str());
        }
        check(angleopt_config_weighted(max_d, pa.data(), pb.data(), pa.size(), &raw));
      } else {
        if (max_n < 1) throw CliError{kUsage, "N must be >= 1"};
        check(angleopt_config_conjectured(max_d, max_n, &raw));
      }
      Config cfg(raw);
      if (as_probability) {
        angleopt_config* prob = nullptr;
        check(angleopt_config_to_probability(cfg.get(), &prob));
        cfg.reset(prob);
      }
      char* json = nullptr;
      check(angleopt_config_to_json(cfg.get(), &json));
      std::cout << OwnedString(json).get() << '\n';
    } else if (*ledger) {
      char* value = nullptr;
      if (ledger_args.size() == 2) {
        check(angleopt_ledger_f_dn(ledger_args[0], ledger_args[1], &value));
      } else {
        check(angleopt_ledger_f_dnk(ledger_args[0], ledger_args[1], ledger_args[2], &value));
      }
      std::cout << OwnedString(value).get() << '\n';
    } else if (*verify) {
      char* csv = nullptr;
      std::size_t checks = 0;
      std::size_t failures = 0;
      check(angleopt_verify_lemma(v_dmax, v_nmax, threads, &csv, &checks, &failures));
      OwnedString owned(csv);
      const std::string inputs = "verify|" + std::to_string(v_dmax) + "|" + std::to_string(v_nmax);
      emit(csv, out_path, run_record("verify", inputs, 0),
           "checks=" + std::to_string(checks) + " failures=" + std::to_string(failures));
      if (failures > 0) return kFalsified;
    } else if (*optimize) {
      Params params = load_params(params_arg, threads, seed);
      const double alpha = parse_alpha(o_alpha);
      angleopt_run* raw = nullptr;
      check(angleopt_optimize(o_d, o_n, alpha, params.get(), &raw));
      Run run(raw);
      angleopt_run_summary s{};
      check(angleopt_run_summarize(run.get(), &s));
      char* csv = nullptr;
      check(angleopt_run_csv(run.get(), &csv));
      OwnedString owned(csv);
      if (!config_out.empty()) {
        angleopt_config* best = nullptr;
        check(angleopt_run_best_config(run.get(), &best));
        Config cfg(best);
        char* json = nullptr;
        check(angleopt_config_to_json(cfg.get(), &json));
        write_file(config_out, std::string(OwnedString(json).get()) + "\n");
      }
      const std::string inputs = "optimize|" + std::to_string(o_d) + "|" + std::to_string(o_n) + "|" +
                                 format_double(alpha) + "|" + params_json(params.get());
      emit(csv, out_path, run_record("optimize", inputs, s.seed),
           std::string("equivalent=") + (s.equivalent ? "true" : "false") + " gap=" + format_double(s.gap));
      if (s.gap < -1e-6) return kFalsified;
    } else if (*sweep) {
      Params params = load_params(params_arg, threads, seed);
      const std::vector<double> alphas = parse_alpha_list(alphas_text);
      char* csv = nullptr;
      std::size_t exceed = 0;
      check(angleopt_sweep(o_d, o_n, alphas.data(), alphas.size(), params.get(), &csv, &exceed));
      OwnedString owned(csv);
      std::string inputs = "sweep|" + std::to_string(o_d) + "|" + std::to_string(o_n) + "|";
      for (double a : alphas) inputs += format_double(a) + ",";
      inputs += "|" + params_json(params.get());
      emit(csv, out_path, run_record("sweep", inputs, angleopt_params_seed(params.get())),
           "exceedances=" + std::to_string(exceed));
      if (exceed > 0) return kFalsified;
    } else if (*qp) {
      angleopt_matrix* raw = nullptr;
      check(angleopt_matrix_parse(read_file(matrix_path).c_str(), &raw));
      Matrix m(raw);
      char* json = nullptr;
      check(angleopt_qp_solve(m.get(), sense_text == "min" ? ANGLEOPT_MINIMIZE : ANGLEOPT_MAXIMIZE, &json));
      std::cout << OwnedString(json).get() << '\n';
    }
  } catch (const CliError& e) {
    std::cerr << "angleopt: " << e.message << '\n';
    return e.code;
  }
  return kOk;
}
