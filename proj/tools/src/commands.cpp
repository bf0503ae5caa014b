#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "mmbb84/bounds.hpp"
#include "mmbb84/css.hpp"
#include "mmbb84/io.hpp"
#include "mmbb84/linear_code.hpp"
#include "mmbb84/protocol.hpp"
#include "mmbb84/quantum.hpp"
#include "sweep.hpp"

namespace mmbb84::cli {

namespace {

constexpr double kCssTolerance = 1e-10;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io::ConfigError("cannot read input file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Runs `body` against the resolved output stream and flushes it.
int with_output(const CommonOptions& options, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (options.out.empty()) {
    return body(std::cout);
  }
  std::ofstream file(options.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write output path '" << options.out << "'\n";
    return 2;
  }
  return body(file);
}

int guard(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const io::ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const gf2::CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

std::string channel_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    return arg;
  }
  return read_file(arg);
}

}  // namespace

int cmd_run(const std::string& config_path, const CommonOptions& options, std::ostream& err) {
  return guard(err, [&]() {
    io::RunConfig config = io::run_config_from_json(read_file(config_path));
    if (options.seed) {
      config.session.seed = *options.seed;
    }
    const protocol::SessionResult result = protocol::run_session(config.channel, config.session);
    return with_output(options, err, [&](std::ostream& out) {
      out << io::session_result_to_json(result) << '\n';
      return 0;
    });
  });
}

int cmd_bounds(const std::string& channel, const CommonOptions& options, std::ostream& err) {
  return guard(err, [&]() {
    const quantum::Channel ch = io::channel_from_json(channel_text(channel));
    const bounds::ChannelRates r = bounds::analytic_rates(ch);
    const bounds::TradeoffReport report = bounds::verify_tradeoff(ch);
    const std::pair<const char*, double> fields[] = {
        {"p_x_plus", r.p_x_plus},   {"p_x_minus", r.p_x_minus},
        {"q_x0", r.q_x0},           {"q_x1", r.q_x1},
        {"p_z0", r.p_z0},           {"p_z1", r.p_z1},
        {"q_z_plus", r.q_z_plus},   {"q_z_minus", r.q_z_minus},
        {"p_x", r.p_x},             {"p_z", r.p_z},
        {"q_x", r.q_x},             {"q_z", r.q_z},
        {"matched_bound", report.matched_bound},
        {"mismatched_bound", report.mismatched_bound},
        {"f11_sum", report.f11_sum},
    };
    return with_output(options, err, [&](std::ostream& out) {
      if (options.format == Format::Json) {
        out << '{';
        for (const auto& [name, value] : fields) {
          out << '"' << name << "\":" << io::format_json_double(value) << ',';
        }
        out << "\"all_satisfied\":" << (report.all_satisfied ? "true" : "false") << "}\n";
      } else {
        for (const auto& [name, value] : fields) {
          out << name << ',';
        }
        out << "all_satisfied\n";
        for (const auto& [name, value] : fields) {
          out << io::format_csv_double(value) << ',';
        }
        out << (report.all_satisfied ? "true" : "false") << '\n';
      }
      return 0;
    });
  });
}

int cmd_sweep(const std::string& spec_path, const CommonOptions& options, std::ostream& err) {
  return guard(err, [&]() {
    SweepSpec spec = sweep_spec_from_json(read_file(spec_path));
    if (options.seed) {
      spec.seed = *options.seed;
    }
    CommonOptions resolved = options;
    if (resolved.out.empty() && spec.out) {
      resolved.out = *spec.out;
    }
    return with_output(resolved, err, [&](std::ostream& out) {
      run_sweep(spec, out);
      return 0;
    });
  });
}

int cmd_css_verify(const CssVerifyOptions& css, const CommonOptions& options,
                   std::ostream& err) {
  return guard(err, [&]() -> int {
    if (css.n < 1 || css.n > css::kMaxDensityQubits) {
      throw io::ConfigError("css-verify: n must lie in [1, 6]");
    }
    if (css.dim_c1 > css.n || css.dim_c2 > css.dim_c1 || css.dim_c1 < 1) {
      throw io::ConfigError("css-verify: need 1 <= dim_c2 <= dim_c1 <= n");
    }
    if (css.trials < 1) {
      throw io::ConfigError("css-verify: trials must be positive");
    }
    const std::uint64_t base_seed = options.seed.value_or(0);

    struct Trial {
      std::size_t index;
      double mixture_distance;
      double uniform_distance;
      bool pass;
    };
    std::vector<Trial> trials;
    for (std::size_t t = 0; t < css.trials; ++t) {
      RandomStream rng(derive_seed(base_seed, t, 0));
      const gf2::LinearCode c1 =
          css.dim_c1 == css.n
              ? gf2::LinearCode(gf2::Matrix::identity(css.n), gf2::Matrix(0, css.n))
              : gf2::LinearCode::random_code(css.n, css.dim_c1, rng);
      const gf2::LinearCode c2 = gf2::sample_subcode(c1, css.dim_c2, rng);

      // Exhaustive over every shift x and codeword v.
      double mixture_distance = 0.0;
      for (std::size_t xi = 0; xi < (std::size_t(1) << css.n); ++xi) {
        gf2::Vector x(css.n);
        for (std::size_t i = 0; i < css.n; ++i) {
          x.set(i, (xi >> i) & 1);
        }
        for (const gf2::Vector& v : gf2::span_of(c1.generator())) {
          const double d = css::trace_distance(css::average_over_z(c1, c2, v, x),
                                               css::coset_mixture(c1, c2, v, x));
          mixture_distance = std::max(mixture_distance, d);
        }
      }
      const double uniform_distance = css::trace_distance(
          css::average_over_x_v(c1, c2), css::DensityMatrix::maximally_mixed(css.n));
      trials.push_back({t, mixture_distance, uniform_distance,
                        mixture_distance <= kCssTolerance && uniform_distance <= kCssTolerance});
    }

    bool all_pass = true;
    double worst_mixture = 0.0, worst_uniform = 0.0;
    for (const Trial& t : trials) {
      all_pass = all_pass && t.pass;
      worst_mixture = std::max(worst_mixture, t.mixture_distance);
      worst_uniform = std::max(worst_uniform, t.uniform_distance);
    }

    const int code = with_output(options, err, [&](std::ostream& out) {
      if (options.format == Format::Json) {
        out << "{\"n\":" << css.n << ",\"dim_c1\":" << css.dim_c1
            << ",\"dim_c2\":" << css.dim_c2 << ",\"trials\":[";
        for (std::size_t i = 0; i < trials.size(); ++i) {
          if (i > 0) out << ',';
          out << "{\"trial\":" << trials[i].index << ",\"mixture_distance\":"
              << io::format_json_double(trials[i].mixture_distance)
              << ",\"uniform_distance\":" << io::format_json_double(trials[i].uniform_distance)
              << ",\"pass\":" << (trials[i].pass ? "true" : "false") << '}';
        }
        out << "],\"max_mixture_distance\":" << io::format_json_double(worst_mixture)
            << ",\"max_uniform_distance\":" << io::format_json_double(worst_uniform)
            << ",\"pass\":" << (all_pass ? "true" : "false") << "}\n";
      } else {
        out << "trial,n,dim_c1,dim_c2,mixture_distance,uniform_distance,pass\n";
        for (const Trial& t : trials) {
          out << t.index << ',' << css.n << ',' << css.dim_c1 << ',' << css.dim_c2 << ','
              << io::format_csv_double(t.mixture_distance) << ','
              << io::format_csv_double(t.uniform_distance) << ','
              << (t.pass ? "true" : "false") << '\n';
        }
      }
      return 0;
    });
    if (code != 0) {
      return code;
    }
    return all_pass ? 0 : 1;
  });
}

namespace {

quantum::DensityOperator random_density(RandomStream& rng) {
  const int parts = 1 + static_cast<int>(rng.next_below(3));
  quantum::Mat2 acc;
  double total = 0.0;
  std::vector<double> weights(parts);
  for (double& w : weights) {
    w = rng.next_unit() + 1e-9;
    total += w;
  }
  for (int i = 0; i < parts; ++i) {
    quantum::Complex a0(rng.next_gaussian(), rng.next_gaussian());
    quantum::Complex a1(rng.next_gaussian(), rng.next_gaussian());
    const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
    if (norm < 1e-9) {
      a0 = 1.0;
      a1 = 0.0;
    } else {
      a0 /= norm;
      a1 /= norm;
    }
    const double w = weights[i] / total;
    acc = acc + quantum::Mat2{a0 * std::conj(a0), a0 * std::conj(a1),
                              a1 * std::conj(a0), a1 * std::conj(a1)}
                    .scaled(w);
  }
  return quantum::DensityOperator::from_matrix(acc);
}

// Brute-force coset leaders straight off the parity-check bits, independent
// of the table construction.
std::size_t decoder_mismatches(const gf2::LinearCode& code, std::size_t* syndromes_seen) {
  const std::size_t n = code.length();
  const std::size_t m = code.redundancy();
  const gf2::SyndromeTable table(code.parity_check());
  std::map<std::uint64_t, std::uint64_t> best;
  for (std::uint64_t f = 0; f < (1ULL << n); ++f) {
    std::uint64_t s = 0;
    for (std::size_t r = 0; r < m; ++r) {
      int parity = 0;
      for (std::size_t c = 0; c < n; ++c) {
        parity ^= (code.parity_check().get(r, c) ? 1 : 0) & static_cast<int>((f >> c) & 1ULL);
      }
      s |= static_cast<std::uint64_t>(parity) << r;
    }
    auto it = best.find(s);
    if (it == best.end()) {
      best.emplace(s, f);
    } else {
      const auto wf = static_cast<unsigned>(__builtin_popcountll(f));
      const auto wb = static_cast<unsigned>(__builtin_popcountll(it->second));
      if (wf < wb ||
          (wf == wb && ((f >> __builtin_ctzll(f ^ it->second)) & 1ULL) == 0)) {
        it->second = f;
      }
    }
  }
  std::size_t mismatches = 0;
  for (const auto& [syndrome, leader] : best) {
    if (table.decode(gf2::Vector::from_mask(syndrome, m)).as_mask() != leader) {
      ++mismatches;
    }
  }
  *syndromes_seen += best.size();
  return mismatches;
}

}  // namespace

int cmd_selftest(const CommonOptions& options, std::ostream& err) {
  return guard(err, [&]() -> int {
    const std::uint64_t seed = options.seed.value_or(0);

    RandomStream channel_rng(derive_seed(seed, 1, 0));
    std::size_t tradeoff_violations = 0;
    double worst_pairwise = 2.0;
    double worst_f11 = -2.0;
    const int channels = 1000;
    for (int i = 0; i < channels; ++i) {
      const bounds::TradeoffReport report =
          bounds::verify_tradeoff(quantum::random_channel(channel_rng));
      if (!report.all_satisfied) {
        ++tradeoff_violations;
      }
      worst_pairwise = std::min({worst_pairwise, report.lhs_f1, report.lhs_f2, report.lhs_f3,
                                 report.lhs_f4});
      worst_f11 = std::max(worst_f11, report.f11_sum);
    }

    RandomStream state_rng(derive_seed(seed, 2, 0));
    std::size_t uncertainty_violations = 0;
    double min_sum = 2.0;
    const int states = 10000;
    for (int i = 0; i < states; ++i) {
      const double sum = bounds::uncertainty_sum(random_density(state_rng));
      min_sum = std::min(min_sum, sum);
      if (sum < 1.0 - bounds::kInequalitySlack) {
        ++uncertainty_violations;
      }
    }

    RandomStream code_rng(derive_seed(seed, 3, 0));
    std::size_t syndromes = 0;
    std::size_t decoder_bad = 0;
    const gf2::LinearCode codes[] = {
        gf2::LinearCode::hamming74(),
        gf2::LinearCode::repetition(5),
        gf2::LinearCode::random_code(9, 4, code_rng),
        gf2::LinearCode::random_code(10, 5, code_rng),
    };
    for (const gf2::LinearCode& code : codes) {
      decoder_bad += decoder_mismatches(code, &syndromes);
    }

    const bool pass =
        tradeoff_violations == 0 && uncertainty_violations == 0 && decoder_bad == 0;
    const int code = with_output(options, err, [&](std::ostream& out) {
      out << "tradeoff: channels=" << channels
          << " min_pairwise=" << io::format_csv_double(worst_pairwise)
          << " worst_f11_sum=" << io::format_csv_double(worst_f11)
          << " violations=" << tradeoff_violations << '\n';
      out << "uncertainty: states=" << states
          << " min_sum=" << io::format_csv_double(min_sum)
          << " violations=" << uncertainty_violations << '\n';
      out << "decoder: codes=" << 4 << " syndromes=" << syndromes
          << " mismatches=" << decoder_bad << '\n';
      out << "selftest: " << (pass ? "PASS" : "FAIL") << '\n';
      return 0;
    });
    if (code != 0) {
      return code;
    }
    return pass ? 0 : 1;
  });
}

}  // namespace mmbb84::cli
