#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "tubal/analysis.hpp"
#include "tubal/io.hpp"
#include "tubal/parallel.hpp"

namespace tubal::cli {

std::vector<std::size_t> parse_k_grid(const std::string& text) {
  auto to_size = [&](const std::string& part) -> std::size_t {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size() || part.front() == '-')
      throw InvalidArgument("bad k value '" + part + "'");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw InvalidArgument("k grid must look like start:stop:step");
    const std::size_t start = to_size(parts[0]), stop = to_size(parts[1]), step = to_size(parts[2]);
    if (step == 0) throw InvalidArgument("k grid step must be positive");
    for (std::size_t k = start; k <= stop; k += step) out.push_back(k);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_size(p));
  }
  if (out.empty()) throw InvalidArgument("k grid is empty");
  for (std::size_t k : out)
    if (k == 0) throw InvalidArgument("k must be positive");
  return out;
}

std::uint64_t cell_seed(std::uint64_t master, Method method, std::size_t k, std::size_t trial) {
  return derive_seed(master, hash_key(to_string(method), k, trial));
}

MethodSpec make_spec(const BenchConfig& cfg, Method method, std::size_t k, std::size_t trial) {
  MethodSpec spec;
  spec.method = method;
  spec.transform = cfg.transform;
  spec.op_kind = cfg.op_kind;
  spec.op_mode = cfg.op_mode;
  spec.k = k;
  spec.s = cfg.s.value_or(2 * k + 1);
  spec.q = cfg.q;
  spec.seed = cell_seed(cfg.seed, method, k, trial);
  if (spec.s < k) throw InvalidArgument("s must be at least k");
  return spec;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg, const Tensor3& a) {
  if (cfg.methods.empty()) throw InvalidArgument("no methods selected");
  if (cfg.k_grid.empty()) throw InvalidArgument("k grid is empty");
  if (cfg.trials == 0) throw InvalidArgument("trials must be positive");

  std::map<TransformKind, Transform> transforms;
  std::vector<MethodSpec> specs;
  std::vector<BenchRow> rows;
  for (Method m : cfg.methods) {
    for (std::size_t k : cfg.k_grid) {
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        MethodSpec spec = make_spec(cfg, m, k, t);
        const TransformKind kind = effective_transform(spec);
        if (!transforms.contains(kind)) transforms.emplace(kind, make_transform(kind, a));
        rows.push_back(BenchRow{std::string(to_string(m)), k, spec.s, effective_q(spec), t, spec.seed,
                                0.0, 0.0, 0.0});
        specs.push_back(std::move(spec));
      }
    }
  }

  parallel_for(specs.size(), [&](std::size_t i) {
    const MethodSpec& spec = specs[i];
    const Transform& L = transforms.at(effective_transform(spec));
    const auto t0 = std::chrono::steady_clock::now();
    const FactoredApprox f = run_method(spec, a, L);
    const auto t1 = std::chrono::steady_clock::now();
    const Tensor3 a_hat = reconstruct(f);
    rows[i].rel_err = rel_error(a, a_hat);
    rows[i].psnr = psnr(a, a_hat);
    rows[i].wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }, true);
  return rows;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "method,k,s,q,trial,seed,rel_err,psnr,wall_ms\n";
  for (const BenchRow& r : rows) {
    out << r.method << ',' << r.k << ',' << r.s << ',' << r.q << ',' << r.trial << ',' << r.seed
        << ',' << format_double(r.rel_err) << ',' << format_double(r.psnr) << ','
        << format_double(r.wall_ms) << '\n';
  }
}

namespace {

struct Options {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string transform;
  std::string op_kind = "gaussian";
  std::string op_mode = "pure";
  std::string k;
  std::size_t s = 0;
  std::string s_rule;
  std::size_t q = 1;
  std::size_t trials = 1;
  std::string out;

  // Subcommand arguments.
  std::string synth_kind;
  std::size_t synth_m = 0, synth_n = 0, synth_p = 0, synth_r = 10;
  std::string input;
  std::string method = "dct-gaussian-sketch";
  std::string methods = "truncated-t-svd,dct-gaussian-sketch-pi,dct-gaussian-sketch,t-sketch";
  std::string q_list = "0,1";
  std::string ref, approx;
  std::vector<std::string> images;
  double sigma = 5.0;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void require_out(const Options& o) {
  if (o.out.empty()) throw InvalidArgument("--out is required");
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_method(p));
  if (out.empty()) throw InvalidArgument("no methods given");
  return out;
}

std::vector<std::size_t> parse_q_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) {
    if (p.empty()) continue;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size() || p.front() == '-') throw InvalidArgument("bad q value '" + p + "'");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw InvalidArgument("q list is empty");
  return out;
}

BenchConfig base_config(const Options& o, const CLI::App& app) {
  BenchConfig cfg;
  cfg.input = o.input;
  if (!o.transform.empty()) cfg.transform = parse_transform_kind(o.transform);
  cfg.op_kind = parse_operator_kind(o.op_kind);
  cfg.op_mode = parse_operator_mode(o.op_mode);
  if (app.count("--s") > 0 && !o.s_rule.empty()) throw InvalidArgument("give either --s or --s-rule");
  if (!o.s_rule.empty() && o.s_rule != "2k+1") throw InvalidArgument("the only s rule is 2k+1");
  if (app.count("--s") > 0) cfg.s = o.s;
  cfg.q = o.q;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.out = o.out;
  return cfg;
}

void apply_threads(const Options& o, const CLI::App& app) {
  if (app.count("--threads") > 0) {
    if (o.threads < 1) throw InvalidArgument("--threads must be positive");
    set_num_threads(o.threads);
    return;
  }
  if (const char* env = std::getenv("TUBAL_SKETCH_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) set_num_threads(n);
  }
}

bool has_ext(const std::string& path, const char* ext) {
  return std::filesystem::path(path).extension() == ext;
}

std::string read_magic(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  char buf[2] = {0, 0};
  f.read(buf, 2);
  return std::string(buf, 2);
}

int cmd_synth(const Options& o, std::ostream& out) {
  require_out(o);
  double exponent = 0.0;
  if (o.synth_kind == "poly-fast") exponent = 2.0;
  else if (o.synth_kind == "poly-slow") exponent = 0.5;
  else throw InvalidArgument("unknown synthetic kind '" + o.synth_kind + "' (poly-fast, poly-slow)");
  if (o.synth_m != o.synth_n) throw InvalidArgument("poly-decay tensors have square slices (m = n)");
  const Tensor3 a = poly_decay(PolyDecaySpec{o.synth_n, o.synth_p, o.synth_r, exponent});
  write_tns(o.out, a);
  out << "wrote " << a.rows() << 'x' << a.cols() << 'x' << a.tubes() << " to " << o.out << '\n';
  return 0;
}

int cmd_approximate(const Options& o, const CLI::App& app, std::ostream& out) {
  BenchConfig cfg = base_config(o, app);
  if (o.k.empty()) throw InvalidArgument("--k is required");
  const std::vector<std::size_t> ks = parse_k_grid(o.k);
  if (ks.size() != 1) throw InvalidArgument("approximate takes a single k");
  const Method method = parse_method(o.method);
  const Tensor3 a = read_tns(o.input);
  const MethodSpec spec = make_spec(cfg, method, ks.front(), 0);
  const Transform L = make_transform(effective_transform(spec), a);
  const auto t0 = std::chrono::steady_clock::now();
  const FactoredApprox f = run_method(spec, a, L);
  const auto t1 = std::chrono::steady_clock::now();
  const Tensor3 a_hat = reconstruct(f);
  if (!o.out.empty()) write_tns(o.out, a_hat);
  out << "method=" << to_string(method) << " k=" << spec.k << " s=" << spec.s
      << " q=" << effective_q(spec) << " seed=" << spec.seed
      << " rel_err=" << format_double(rel_error(a, a_hat)) << " psnr=" << format_double(psnr(a, a_hat))
      << " wall_ms=" << format_double(std::chrono::duration<double, std::milli>(t1 - t0).count())
      << '\n';
  return 0;
}

int cmd_bench(const Options& o, const CLI::App& app, std::ostream& out) {
  BenchConfig cfg = base_config(o, app);
  cfg.methods = parse_methods(o.methods);
  if (o.k.empty()) throw InvalidArgument("--k is required");
  cfg.k_grid = parse_k_grid(o.k);
  const Tensor3 a = read_tns(o.input);
  const std::vector<BenchRow> rows = run_bench(cfg, a);
  if (o.out.empty()) {
    write_bench_csv(out, rows);
  } else {
    auto f = open_out(o.out);
    write_bench_csv(f, rows);
    if (!f) throw IoError("write failed for '" + o.out + "'");
  }
  return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const std::vector<std::size_t> qs = parse_q_list(o.q_list);
  const Tensor3 a = read_tns(o.input);
  const TransformKind kind = o.transform.empty() ? TransformKind::dct : parse_transform_kind(o.transform);
  const std::vector<SpectrumColumn> cols = spectrum(make_transform(kind, a), a, qs);
  std::ostringstream csv;
  csv << "i,q,sigma_normalized\n";
  for (const SpectrumColumn& c : cols)
    for (std::size_t i = 0; i < c.sigma_normalized.size(); ++i)
      csv << (i + 1) << ',' << c.q << ',' << format_double(c.sigma_normalized[i]) << '\n';
  if (o.out.empty()) {
    out << csv.str();
  } else {
    auto f = open_out(o.out);
    f << csv.str();
  }
  return 0;
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const Tensor3 ref = read_tns(o.ref);
  const Tensor3 approx = read_tns(o.approx);
  if (ref.dims() != approx.dims()) throw DimensionError("reference and approximation shapes differ");
  out << "rel_err=" << format_double(rel_error(ref, approx)) << " psnr=" << format_double(psnr(ref, approx))
      << '\n';
  return 0;
}

int cmd_img2tns(const Options& o, std::ostream& out) {
  require_out(o);
  if (o.images.empty()) throw InvalidArgument("no input images");
  const std::string magic = read_magic(o.images.front());
  Tensor3 a;
  if (magic == "P6") {
    if (o.images.size() != 1) throw InvalidArgument("give exactly one PPM image");
    a = read_ppm(o.images.front());
  } else {
    std::vector<std::filesystem::path> paths(o.images.begin(), o.images.end());
    a = read_pgm_stack(paths);
  }
  write_tns(o.out, a);
  out << "wrote " << a.rows() << 'x' << a.cols() << 'x' << a.tubes() << " to " << o.out << '\n';
  return 0;
}

int cmd_tns2img(const Options& o, std::ostream& out) {
  require_out(o);
  const Tensor3 a = read_tns(o.input);
  if (has_ext(o.out, ".ppm")) {
    write_ppm(o.out, a);
  } else if (has_ext(o.out, ".pgm")) {
    if (a.tubes() == 1) {
      write_pgm(o.out, a, 0);
    } else {
      const std::filesystem::path base(o.out);
      for (std::size_t k = 0; k < a.tubes(); ++k) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%03zu.pgm", k);
        write_pgm(base.parent_path() / (base.stem().string() + suffix), a, k);
      }
    }
  } else {
    throw InvalidArgument("output must end in .ppm or .pgm");
  }
  out << "wrote " << o.out << '\n';
  return 0;
}

int cmd_noise(const Options& o, std::ostream& out) {
  require_out(o);
  const Tensor3 a = read_tns(o.input);
  Rng rng(o.seed);
  const Tensor3 noisy = add_noise(a, o.sigma, rng);
  write_tns(o.out, noisy);
  out << "wrote " << o.out << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Low tubal-rank tensor approximation by randomized sketching", "tubal-sketch"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--threads", o.threads, "Worker threads (default: TUBAL_SKETCH_THREADS or all cores)");
  app.add_option("--transform", o.transform, "dft | dct | u | identity");
  app.add_option("--operator", o.op_kind, "gaussian | srht | count");
  app.add_option("--operator-mode", o.op_mode, "pure | data-aware");
  app.add_option("--k", o.k, "Target rank, or a grid start:stop:step / a,b,c");
  app.add_option("--s", o.s, "Sketch size");
  app.add_option("--s-rule", o.s_rule, "Sketch size rule (2k+1, the default)");
  app.add_option("--q", o.q, "Power iterations for the *-pi methods");
  app.add_option("--trials", o.trials, "Trials per (method, k)");
  app.add_option("--out", o.out, "Output path");

  auto* synth = app.add_subcommand("synth", "Write a PolyDecay tensor")->fallthrough();
  synth->add_option("kind", o.synth_kind, "poly-fast | poly-slow")->required();
  synth->add_option("m", o.synth_m)->required();
  synth->add_option("n", o.synth_n)->required();
  synth->add_option("p", o.synth_p)->required();
  synth->add_option("--r", o.synth_r, "Plateau length");

  auto* approximate = app.add_subcommand("approximate", "Run one method and report errors")->fallthrough();
  approximate->add_option("input", o.input, "TNS3 tensor")->required();
  approximate->add_option("--method", o.method, "Method id");

  auto* bench = app.add_subcommand("bench", "Sweep methods over a k grid and write CSV")->fallthrough();
  bench->add_option("input", o.input, "TNS3 tensor")->required();
  bench->add_option("--methods", o.methods, "Comma separated method ids");

  auto* spec = app.add_subcommand("spectrum", "Normalized singular values with power iteration")->fallthrough();
  spec->add_option("input", o.input, "TNS3 tensor")->required();
  spec->add_option("--q-list", o.q_list, "Comma separated q values");

  auto* metrics = app.add_subcommand("metrics", "Relative error and PSNR")->fallthrough();
  metrics->add_option("ref", o.ref)->required();
  metrics->add_option("approx", o.approx)->required();

  auto* img2tns = app.add_subcommand("img2tns", "Convert a PPM image or PGM frames to TNS3")->fallthrough();
  img2tns->add_option("images", o.images)->required();

  auto* tns2img = app.add_subcommand("tns2img", "Convert TNS3 to PPM or PGM")->fallthrough();
  tns2img->add_option("input", o.input)->required();

  auto* noise = app.add_subcommand("noise", "Add Gaussian noise")->fallthrough();
  noise->add_option("input", o.input)->required();
  noise->add_option("--sigma", o.sigma, "Noise standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    apply_threads(o, app);
    if (*synth) return cmd_synth(o, out);
    if (*approximate) return cmd_approximate(o, app, out);
    if (*bench) return cmd_bench(o, app, out);
    if (*spec) return cmd_spectrum(o, out);
    if (*metrics) return cmd_metrics(o, out);
    if (*img2tns) return cmd_img2tns(o, out);
    if (*tns2img) return cmd_tns2img(o, out);
    if (*noise) return cmd_noise(o, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace tubal::cli
