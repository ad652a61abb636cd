#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "syncsec/fixtures.hpp"
#include "syncsec/io.hpp"
#include "syncsec/ndi.hpp"
#include "syncsec/nds.hpp"
#include "syncsec/nfa.hpp"
#include "syncsec/oracle.hpp"
#include "syncsec/peek.hpp"
#include "syncsec/random.hpp"
#include "syncsec/res.hpp"

namespace {

// exit codes: 0 satisfies / ok, 1 violates / mismatch, 2 input or usage
// error, 3 resource limit exceeded
constexpr int kSatisfies = 0;
constexpr int kViolates = 1;
constexpr int kInputError = 2;
constexpr int kResource = 3;

syncsec::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return syncsec::json::parse(in);
}

syncsec::Machine load_machine(const std::string& path) {
  syncsec::Machine m = syncsec::machine_from_json(load_json(path));
  auto rep = syncsec::validate_machine(m);
  if (!rep.ok())
    throw std::invalid_argument(path + ": invalid machine (" +
                                rep.violations.front().element + ")");
  return m;
}

void emit(const syncsec::json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

struct CheckOptions {
  std::string property;
  std::string input;
  bool witness = false;
  std::size_t limits = std::size_t{1} << 20;
  std::string format = "text";
};

int run_check(const CheckOptions& opt) {
  using namespace syncsec;
  const Machine m = load_machine(opt.input);
  json out;
  out["property"] = opt.property;
  int code = kSatisfies;
  std::size_t visited = 0;
  const auto t0 = std::chrono::steady_clock::now();

  if (opt.property == "ndi") {
    NdiStats stats;
    NdiVerdict v = check_ndi(m, opt.limits, &stats);
    visited = stats.visited;
    out["verdict"] = v.satisfies ? "satisfies" : "violates";
    if (!v.satisfies) {
      code = kViolates;
      if (opt.witness) out["witness"] = ndi_witness_to_json(*v.witness);
    }
  } else if (opt.property == "nds") {
    NdsLimits limits;
    limits.visited_limit = opt.limits;
    NdsStats stats;
    NdsVerdict v = check_nds(m, limits, &stats);
    visited = stats.visited;
    if (v.outcome == NdsOutcome::resource_exceeded) {
      std::cerr << "resource limit exceeded: " << v.diagnostic << "\n";
      return kResource;
    }
    const bool sat = v.outcome == NdsOutcome::satisfies;
    out["verdict"] = sat ? "satisfies" : "violates";
    if (!sat) {
      code = kViolates;
      if (opt.witness) out["witness"] = nds_witness_to_json(*v.witness);
    }
  } else {  // res
    ResVerdict v = check_res(m);
    out = res_verdict_to_json(v);
    out["property"] = opt.property;
    if (!v.satisfies) code = kViolates;
    if (!opt.witness) {
      out.erase("blocks");
      out.erase("counterexample");
    }
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - t0);
  if (opt.format == "structured") {
    emit(out, "");
  } else {
    std::cout << opt.property << ": " << out["verdict"].get<std::string>() << "\n";
    if (out.count("witness")) std::cout << out["witness"].dump(2) << "\n";
    if (out.count("blocks")) std::cout << "blocks: " << out["blocks"].dump() << "\n";
    if (out.count("counterexample"))
      std::cout << "counterexample: " << out["counterexample"].dump() << "\n";
  }
  // timing and search size go to stderr so stdout stays reproducible
  std::cerr << "visited=" << visited << " elapsed_ms=" << elapsed.count() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verifier for information-flow security of synchronous machines"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  auto* check = app.add_subcommand("check", "decide ndi / nds / res on a machine");
  check->add_option("--property", check_opt.property, "property to decide")
      ->required()
      ->check(CLI::IsMember({"ndi", "nds", "res"}));
  check->add_option("input", check_opt.input, "machine file")->required();
  check->add_flag("--witness", check_opt.witness, "emit violation witness");
  check->add_option("--limits", check_opt.limits, "visited-state cap")
      ->check(CLI::PositiveNumber);
  check->add_option("--format", check_opt.format, "output format")
      ->check(CLI::IsMember({"text", "structured"}));

  // gen
  auto* gen = app.add_subcommand("gen", "generate machines");
  gen->require_subcommand(1);
  std::string gen_in, gen_out;
  auto* gen_nfa = gen->add_subcommand("nfa", "machine from an NFA (universality)");
  gen_nfa->add_option("input", gen_in, "NFA file")->required();
  gen_nfa->add_option("-o,--output", gen_out, "output file (default stdout)");
  auto* gen_peek = gen->add_subcommand("peek", "machine from a blind peek game");
  gen_peek->add_option("input", gen_in, "game file")->required();
  gen_peek->add_option("-o,--output", gen_out, "output file (default stdout)");
  auto* gen_random = gen->add_subcommand("random", "seeded random machine");
  syncsec::RandomMachineParams rnd;
  std::uint64_t seed = 0;
  gen_random->add_option("--states", rnd.num_states)->check(CLI::PositiveNumber);
  gen_random->add_option("--actions-h", rnd.num_actions_h)->check(CLI::PositiveNumber);
  gen_random->add_option("--actions-l", rnd.num_actions_l)->check(CLI::PositiveNumber);
  gen_random->add_option("--observations", rnd.num_observations)
      ->check(CLI::PositiveNumber);
  gen_random->add_option("--seed", seed, "rng seed");
  gen_random->add_option("-o,--output", gen_out, "output file (default stdout)");

  // oracle
  std::string oracle_prop, oracle_in;
  std::size_t oracle_depth = 3;
  auto* oracle =
      app.add_subcommand("oracle", "compare a checker against its brute oracle");
  oracle->add_option("property", oracle_prop, "ndi | nds | res")
      ->required()
      ->check(CLI::IsMember({"ndi", "nds", "res"}));
  oracle->add_option("input", oracle_in, "machine file")->required();
  oracle->add_option("--depth", oracle_depth, "oracle horizon (ndi/nds)");

  // replay
  std::string replay_prop, replay_in, replay_witness;
  auto* replay = app.add_subcommand("replay", "validate an emitted witness");
  replay->add_option("property", replay_prop, "ndi | nds")
      ->required()
      ->check(CLI::IsMember({"ndi", "nds"}));
  replay->add_option("input", replay_in, "machine file")->required();
  replay->add_option("--witness-file", replay_witness, "witness file")->required();

  // validate
  std::string validate_in;
  auto* validate = app.add_subcommand("validate", "check machine well-formedness");
  validate->add_option("input", validate_in, "machine file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  using namespace syncsec;
  try {
    if (*check) return run_check(check_opt);

    if (*gen_nfa) {
      emit(machine_to_json(nfa_to_machine(nfa_from_json(load_json(gen_in)))),
           gen_out);
      return 0;
    }
    if (*gen_peek) {
      emit(machine_to_json(peek_to_machine(peek_from_json(load_json(gen_in)))),
           gen_out);
      return 0;
    }
    if (*gen_random) {
      emit(machine_to_json(random_machine(seed, rnd)), gen_out);
      return 0;
    }

    if (*oracle) {
      const Machine m = load_machine(oracle_in);
      bool agree = false;
      if (oracle_prop == "ndi") {
        const std::size_t states = m.states.size();
        const std::size_t depth = states * (std::size_t{1} << states);
        agree = (check_ndi(m).satisfies) ==
                (brute_ndi(m, depth) == Verdict::satisfies);
      } else if (oracle_prop == "nds") {
        NdsLimits limits;
        limits.max_depth = oracle_depth;
        NdsVerdict v = check_nds(m, limits);
        if (v.outcome == NdsOutcome::resource_exceeded) {
          std::cerr << "resource limit exceeded: " << v.diagnostic << "\n";
          return kResource;
        }
        agree = (v.outcome == NdsOutcome::satisfies) ==
                (brute_nds(m, oracle_depth) == Verdict::satisfies);
      } else {
        agree = check_res(m).satisfies ==
                (brute_res(m).verdict == Verdict::satisfies);
      }
      std::cout << oracle_prop << " oracle: " << (agree ? "agree" : "DISAGREE")
                << "\n";
      return agree ? 0 : 1;
    }

    if (*replay) {
      const Machine m = load_machine(replay_in);
      bool ok = false;
      if (replay_prop == "ndi") {
        ok = ndi_witness_replay(m, ndi_witness_from_json(load_json(replay_witness)));
      } else {
        NdsWitness w = nds_witness_from_json(load_json(replay_witness));
        ok = strategy_excludes(m, w.strategy, w.excluded_view,
                               w.excluded_view.length());
        // an excluded view must still be possible in the machine
        if (ok) {
          CompiledMachine cm(m);
          StateSet r = cm.singleton(cm.initial());
          if (w.excluded_view.trace.at(0) !=
              cm.observation_name(cm.obs_l(cm.initial())))
            ok = false;
          for (std::size_t i = 0; ok && i < w.excluded_view.length(); ++i)
            r = cm.view_step(
                r, cm.action_l_index(w.excluded_view.trace[2 * i + 1]),
                cm.observation_index(w.excluded_view.trace[2 * i + 2]));
          if (r.none()) ok = false;
        }
      }
      std::cout << replay_prop << " witness: " << (ok ? "valid" : "INVALID")
                << "\n";
      return ok ? 0 : 1;
    }

    if (*validate) {
      Machine m = machine_from_json(load_json(validate_in));
      auto rep = validate_machine(m);
      for (const auto& v : rep.violations) std::cout << v.element << "\n";
      std::cout << (rep.ok() ? "valid" : "invalid") << "\n";
      return rep.ok() ? 0 : 1;
    }
  } catch (const syncsec::ResourceLimitError& e) {
    std::cerr << "resource limit exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
