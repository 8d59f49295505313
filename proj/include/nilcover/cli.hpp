#pragma once

// Command line front end. Subcommands: gen, certify, cover, centralize,
// gleason, calculus, selftest. Exit codes: 0 success, 1 assertion or
// verification failure, 2 usage or resource errors. Failures emit a
// machine-readable JSON object on stderr.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilcover/cover.hpp"
#include "nilcover/generators.hpp"
#include "nilcover/json_io.hpp"
#include "nilcover/sampling.hpp"

namespace nilcover {

namespace cli_detail {

struct Common {
  std::string input;
  std::string output;
  std::size_t max_set_size = 10'000'000;
  std::size_t max_pairs = 2'000'000'000;
  unsigned threads = 0;

  SetLimits limits() const {
    SetLimits l;
    l.max_elements = max_set_size;
    l.max_pairs = max_pairs;
    l.threads = threads;
    return l;
  }
};

inline void add_common(CLI::App* cmd, Common& c, bool needs_input) {
  if (needs_input)
    cmd->add_option("--input", c.input, "input JSON path")->required();
  cmd->add_option("--output", c.output, "output JSON path");
  cmd->add_option("--max-set-size", c.max_set_size,
                  "cap on any one result set cardinality");
  cmd->add_option("--max-pairs", c.max_pairs,
                  "cap on pairwise products per set operation");
  cmd->add_option("--threads", c.threads,
                  "worker threads for set products (0 = hardware)");
}

inline SymSet load_set(const std::string& path) {
  return symset_from_json(load_json(path));
}

inline void emit(const Common& c, const ojson& j) {
  if (!c.output.empty()) save_json(c.output, j);
}

/// Deepest-coordinates flag chain 0 < H_1 < ... < full: H_i spans the
/// last i graded coordinates. Brackets raise the grading, so every tail
/// is closed.
inline std::vector<Subalgebra> default_flag_chain(int n) {
  const int m = coord_dim(n);
  std::vector<Subalgebra> chain{zero_subalgebra(n)};
  std::vector<CoordVector> rows;
  for (int i = m - 1; i >= 0; --i) {
    CoordVector e(static_cast<std::size_t>(m), Rational(0));
    e[static_cast<std::size_t>(i)] = Rational(1);
    rows.push_back(std::move(e));
    chain.push_back(make_subalgebra(rref(n, rows)));
  }
  return chain;
}

inline ApproxCert obtain_cert(const SymSet& A, const std::string& cert_path,
                              const SetLimits& limits) {
  if (cert_path.empty()) return certify(A, limits);
  ApproxCert cert = cert_from_json(load_json(cert_path), A.n());
  if (!verify_cert(A, cert, limits))
    throw InvariantViolation("certificate does not verify against the input set");
  return cert;
}

int run_selftest(const Common& c);

}  // namespace cli_detail

/// Entry point used by both the binary and the in-process tests.
inline int run_cli(int argc, const char* const* argv) {
  using cli_detail::Common;
  CLI::App app{
      "exact product-set toolkit for unitriangular groups: certify "
      "approximate subgroups and cover them by subgroup cosets"};
  app.require_subcommand(1);

  // gen
  Common gen_c;
  std::string gen_kind;
  std::vector<long long> gen_params;
  int gen_n = 3;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "generate a corpus instance");
  gen->add_option("--kind", gen_kind,
                  "heisenberg_box | unitri_box | word_ball | central_interval "
                  "| custom_file")
      ->required();
  gen->add_option("--params", gen_params, "kind-specific integer parameters");
  gen->add_option("--n", gen_n, "ambient size (2..8)");
  gen->add_option("--seed", gen_seed, "seed for randomized kinds");
  cli_detail::add_common(gen, gen_c, false);
  gen->add_option("--input", gen_c.input, "source set for kind custom_file");

  // certify
  Common cert_c;
  CLI::App* cert_cmd = app.add_subcommand("certify", "greedy covering certificate");
  cli_detail::add_common(cert_cmd, cert_c, true);

  // cover
  Common cover_c;
  std::string cover_cert_path;
  CLI::App* cover_cmd =
      app.add_subcommand("cover", "run the coset-covering construction");
  cli_detail::add_common(cover_cmd, cover_c, true);
  cover_cmd->add_option("--cert", cover_cert_path,
                        "certificate JSON (computed greedily when absent)");

  // centralize
  Common cen_c;
  std::string cen_cert_path;
  bool cen_exhaustive = false;
  CLI::App* cen_cmd =
      app.add_subcommand("centralize", "large-centralizer witness and bounds");
  cli_detail::add_common(cen_cmd, cen_c, true);
  cen_cmd->add_option("--cert", cen_cert_path, "certificate JSON");
  cen_cmd->add_flag("--exhaustive-gamma", cen_exhaustive,
                    "scan every candidate gamma and report the best");

  // gleason
  Common gl_c;
  std::string gl_chain_path;
  CLI::App* gl_cmd =
      app.add_subcommand("gleason", "growth along a nested subgroup chain");
  cli_detail::add_common(gl_cmd, gl_c, true);
  gl_cmd->add_option("--chain", gl_chain_path,
                     "JSON array of subalgebras (default: deepest-coordinate "
                     "flag chain)");

  // calculus
  Common calc_c;
  std::string calc_cert_path, calc_sub_path;
  int calc_kmax = 5;
  CLI::App* calc_cmd =
      app.add_subcommand("calculus", "subgroup/quotient counting clauses");
  cli_detail::add_common(calc_cmd, calc_c, true);
  calc_cmd->add_option("--cert", calc_cert_path, "certificate JSON");
  calc_cmd->add_option("--subalgebra", calc_sub_path,
                       "subgroup JSON (default: the center)");
  calc_cmd->add_option("--kmax", calc_kmax, "largest power in clause (ii)");

  // selftest
  Common self_c;
  CLI::App* self_cmd =
      app.add_subcommand("selftest", "invariant suite on the built-in corpus");
  cli_detail::add_common(self_cmd, self_c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << ojson{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    if (*gen) {
      SymSet s = [&] {
        if (gen_kind == "custom_file") {
          if (gen_c.input.empty())
            throw UsageError("gen --kind custom_file requires --input");
          return cli_detail::load_set(gen_c.input);
        }
        InstanceSpec spec{gen_kind, gen_params, gen_n, gen_seed};
        return build_instance(spec, gen_c.limits());
      }();
      cli_detail::emit(gen_c, symset_to_json(s));
      std::cout << "kind=" << gen_kind << " n=" << s.n() << " size=" << s.size()
                << " symmetric=" << (s.is_symmetric() ? "yes" : "no") << '\n';
      return 0;
    }

    if (*cert_cmd) {
      SymSet a = cli_detail::load_set(cert_c.input);
      ApproxCert cert = certify(a, cert_c.limits());
      bool ok = verify_cert(a, cert, cert_c.limits());
      cli_detail::emit(cert_c, cert_to_json(cert));
      std::cout << "K=" << cert.K.str() << " |X|=" << cert.X.size()
                << " doubling=" << doubling(a, cert_c.limits()).str()
                << " verified=" << (ok ? "yes" : "no") << '\n';
      return ok ? 0 : 1;
    }

    if (*cover_cmd) {
      SymSet a = cli_detail::load_set(cover_c.input);
      SetLimits lim = cover_c.limits();
      ApproxCert cert = cli_detail::obtain_cert(a, cover_cert_path, lim);
      CoverResult r = cover(a, cert, lim);
      bool ok = r.all_checks_pass() && verify_cover(a, r, lim);
      cli_detail::emit(cover_c, cover_to_json(r));
      std::cout << "dim=" << r.final_dim << " cosets=" << r.cosets.size()
                << " K=" << r.K.str() << " checks="
                << (ok ? "pass" : "FAIL") << '\n';
      return ok ? 0 : 1;
    }

    if (*cen_cmd) {
      SymSet a = cli_detail::load_set(cen_c.input);
      SetLimits lim = cen_c.limits();
      ApproxCert cert = cli_detail::obtain_cert(a, cen_cert_path, lim);
      CentralizerBoundReport r = check_centralizer_bound(a, cert, lim, cen_exhaustive);
      cli_detail::emit(cen_c, centralizer_report_to_json(r));
      std::cout << "gamma_depth=" << r.witness.depth
                << " centralizer_count=" << r.witness.centralizer_count
                << " bound=" << (r.bound_pass ? "pass" : "FAIL")
                << " chain=" << (r.d_chain_pass ? "pass" : "FAIL") << '\n';
      return r.pass() ? 0 : 1;
    }

    if (*gl_cmd) {
      SymSet a = cli_detail::load_set(gl_c.input);
      std::vector<Subalgebra> chain;
      if (gl_chain_path.empty()) {
        chain = cli_detail::default_flag_chain(a.n());
      } else {
        ojson j = load_json(gl_chain_path);
        if (!j.is_array()) throw ParseError("chain: expected a JSON array");
        for (const auto& e : j) chain.push_back(subalgebra_from_json(e));
      }
      GleasonWitness w = gleason_check(a, chain, gl_c.limits());
      cli_detail::emit(gl_c, gleason_to_json(w));
      std::cout << "ratio=" << w.ratio.str()
                << " hypothesis=" << (w.hypothesis_met ? "met" : "not-met")
                << " pass=" << (w.pass ? "yes" : "no") << '\n';
      return 0;
    }

    if (*calc_cmd) {
      SymSet a = cli_detail::load_set(calc_c.input);
      SetLimits lim = calc_c.limits();
      ApproxCert cert = cli_detail::obtain_cert(a, calc_cert_path, lim);
      Subalgebra h =
          calc_sub_path.empty()
              ? lie_closure(a.n(), {NilVec::basis(
                    a.n(), GradedOrder::get(a.n()).index(0, a.n() - 1))})
              : subalgebra_from_json(load_json(calc_sub_path));
      auto rep = check_calculus(a, cert, h, calc_kmax, lim);
      cli_detail::emit(calc_c, clauses_to_json(rep));
      for (const auto& r : rep)
        std::cout << r.clause << ": "
                  << (r.skipped ? "skipped" : (r.pass ? "pass" : "FAIL"))
                  << '\n';
      return all_pass(rep) ? 0 : 1;
    }

    if (*self_cmd) return cli_detail::run_selftest(self_c);
  } catch (const UsageError& e) {
    std::cerr << ojson{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << ojson{{"error", "parse"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    ojson partial = ojson::array();
    for (std::size_t c : e.partial_cardinalities) partial.push_back(c);
    std::cerr << ojson{{"error", "resource"},
                       {"message", e.what()},
                       {"cap_kind", e.cap_kind},
                       {"cap", e.cap},
                       {"projected", e.projected},
                       {"partial_cardinalities", partial}}
                     .dump()
              << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << ojson{{"error", "assertion"}, {"message", e.what()}}.dump()
              << '\n';
    return 1;
  }
  return 2;
}

namespace cli_detail {

inline int run_selftest(const Common& c) {
  SetLimits lim = c.limits();
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "[ok] " : "[FAIL] ") << name << '\n';
    if (!ok) ++failures;
  };

  struct Item {
    std::string name;
    SymSet set;
  };
  std::vector<Item> corpus;
  corpus.push_back({"central_interval(5)", central_interval(3, 5)});
  corpus.push_back({"heisenberg_box(1,1,2)", heisenberg_box(1, 1, 2)});
  corpus.push_back({"heisenberg_box(2,2,8)", heisenberg_box(2, 2, 8)});
  corpus.push_back({"word_ball(3,3)", word_ball(3, 3, lim)});

  for (const auto& item : corpus) {
    const SymSet& a = item.set;
    report(item.name + ": symmetric with identity",
           a.is_symmetric() && a.has_identity());
    ApproxCert cert = certify(a, lim);
    report(item.name + ": certificate verifies", verify_cert(a, cert, lim));
    report(item.name + ": doubling <= K", doubling(a, lim) <= cert.K);
    Subalgebra center = lie_closure(
        a.n(), {NilVec::basis(a.n(), GradedOrder::get(a.n()).index(0, a.n() - 1))});
    report(item.name + ": counting clauses",
           all_pass(check_calculus(a, cert, center, 3, lim)));
    CentralizerBoundReport cenrep = check_centralizer_bound(a, cert, lim);
    report(item.name + ": centralizer bound", cenrep.pass());
    CoverResult r = cover(a, cert, lim);
    report(item.name + ": cover checks", r.all_checks_pass());
    report(item.name + ": cover verifies", verify_cover(a, r, lim));
  }

  // Exactness spot checks.
  SplitMix rng(0xc0ffee);
  bool exact = true;
  for (int i = 0; i < 200 && exact; ++i) {
    int n = i % 2 == 0 ? 3 : 4;
    UniTri g = sample_unitri(rng, n);
    exact = exp_of(log_of(g)) == g;
  }
  report("log/exp round trips", exact);
  bool canon_ok = true;
  for (int i = 0; i < 200 && canon_ok; ++i) {
    int n = i % 2 == 0 ? 3 : 4;
    Subalgebra h = sample_subalgebra(rng, n, 2);
    UniTri g = sample_unitri(rng, n, 4, 3);
    CoordVector x(static_cast<std::size_t>(coord_dim(n)), Rational(0));
    for (const auto& b : h.space.basis)
      x = vec_add(x, vec_scale(sample_rational(rng, 3, 2), b));
    canon_ok =
        canon_coset(h, mul(g, exp_of(NilVec{n, x}))) == canon_coset(h, g);
  }
  report("coset canonicalization well-defined", canon_ok);
  return failures == 0 ? 0 : 1;
}

}  // namespace cli_detail

}  // namespace nilcover
