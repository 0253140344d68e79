#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcfh/derivation_json.hpp"
#include "pcfh/parser.hpp"
#include "pcfh/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitStuck = 3;
constexpr int kExitFuel = 4;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

pcfh::TermPtr loadTerm(const std::string& path) {
  return pcfh::parseTerm(readFile(path));
}

void printTraceLine(const pcfh::EvalStep& s) {
  std::cout << pcfh::ruleNameStr(s.rule) << " : " << pcfh::printTerm(s.term)
            << "\n";
}

int runEval(const std::string& file, std::uint64_t fuel, bool trace,
            pcfh::Strategy strat) {
  pcfh::Trace tr = pcfh::evaluate(loadTerm(file), fuel, strat);
  if (trace)
    for (const auto& s : tr.steps) printTraceLine(s);
  if (tr.status == pcfh::TraceStatus::NormalForm) {
    std::cout << "normal form: " << pcfh::printTerm(tr.final()) << "\n";
    std::cout << "nature: " << pcfh::fallibleNatureStr(*tr.nature) << "\n";
  } else {
    std::cout << "fuel exhausted at: " << pcfh::printTerm(tr.final()) << "\n";
  }
  std::cout << "steps: " << tr.length() << "\n";
  std::cout << "counter: " << tr.counter().str() << "\n";
  if (tr.status == pcfh::TraceStatus::FuelExhausted) return kExitFuel;
  if (*tr.nature == pcfh::FallibleNature::Stuck) return kExitStuck;
  return kExitOk;
}

int runNf(const std::string& file) {
  auto nf = pcfh::classifyNF(loadTerm(file));
  std::cout << (nf ? pcfh::fallibleNatureStr(*nf) : "reducible") << "\n";
  return kExitOk;
}

int runCheck(const std::string& file, bool requireTight, bool strictZero) {
  pcfh::DerivPtr d = pcfh::derivationFromJson(readFile(file));
  pcfh::CheckOptions opts;
  opts.strictZero = strictZero;
  try {
    pcfh::Judgment j = pcfh::checkDerivation(d, opts);
    if (requireTight && !pcfh::isTight(d)) {
      std::cerr << "derivation checks but is not tight\n";
      return kExitCheckFailed;
    }
    std::cout << pcfh::printJudgment(j) << "\n";
    return kExitOk;
  } catch (const pcfh::CheckError& e) {
    std::cerr << "check failed " << e.what() << "\n";
    return kExitCheckFailed;
  }
}

int synthStatusExit(pcfh::SynthStatus st, const pcfh::Trace& trace) {
  switch (st) {
    case pcfh::SynthStatus::Stuck:
      std::cerr << "stuck at: " << pcfh::printTerm(trace.final()) << "\n";
      return kExitStuck;
    case pcfh::SynthStatus::FuelExhausted:
      std::cerr << "fuel exhausted after " << trace.length() << " steps\n";
      return kExitFuel;
    case pcfh::SynthStatus::Open:
      std::cerr << "term has free variables\n";
      return kExitUsage;
    default:
      return kExitOk;
  }
}

int runSynth(const std::string& file, std::uint64_t fuel,
             const std::string& out) {
  pcfh::SynthResult res = pcfh::synthesizeTight(loadTerm(file), fuel);
  if (!res.ok()) return synthStatusExit(res.status, res.trace);
  std::cout << pcfh::counterOf(res.derivation).str() << "\n";
  std::cout << "type "
            << pcfh::printMultitype(res.derivation->conclusion.result) << "\n";
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << pcfh::derivationToJson(res.derivation) << "\n";
  }
  return kExitOk;
}

int runPredict(const std::string& file, std::uint64_t fuel, bool verify) {
  pcfh::TermPtr t = loadTerm(file);
  pcfh::PredictResult res = pcfh::predictSteps(t, fuel);
  if (!res.ok()) return synthStatusExit(res.status, res.trace);
  std::cout << res.counter.str() << "\n";
  if (verify) {
    pcfh::Trace tr = pcfh::evaluate(t, fuel);
    if (tr.status != pcfh::TraceStatus::NormalForm ||
        tr.counter() != res.counter) {
      std::cerr << "verification failed: evaluation counter "
                << tr.counter().str() << "\n";
      return kExitCheckFailed;
    }
    std::cout << "verified: evaluation used " << tr.length() << " steps\n";
  }
  return kExitOk;
}

int runDiamond(const std::string& file) {
  pcfh::DiamondReport rep = pcfh::diamondCheck(loadTerm(file));
  if (rep.pairs.empty()) {
    std::cout << "no critical pairs\n";
    return kExitOk;
  }
  for (const auto& p : rep.pairs) {
    std::cout << pcfh::ruleNameStr(p.left.rule) << " / "
              << pcfh::ruleNameStr(p.right.rule) << ": ";
    if (p.join) {
      std::cout << "join at " << pcfh::printTerm(*p.join) << "\n";
    } else {
      std::cout << "NO JOIN for " << pcfh::printTerm(p.left.term) << " vs "
                << pcfh::printTerm(p.right.term) << "\n";
    }
  }
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PCF_H evaluator and quantitative type tooling"};
  app.require_subcommand(1);

  std::string file;
  std::string outFile;
  std::uint64_t fuel = 10000;
  bool trace = false;
  bool requireTight = false;
  bool strictZero = false;
  bool verify = false;
  std::string strategy = "left";

  auto* evalCmd = app.add_subcommand("eval", "evaluate a term to normal form");
  evalCmd->add_option("file", file)->required();
  evalCmd->add_option("--fuel", fuel, "maximum number of steps");
  evalCmd->add_flag("--trace", trace, "print each step");
  evalCmd->add_option("--strategy", strategy, "left|right application order")
      ->check(CLI::IsMember({"left", "right"}));

  auto* nfCmd = app.add_subcommand("nf", "classify a term's normal form");
  nfCmd->add_option("file", file)->required();

  auto* checkCmd = app.add_subcommand("check", "validate a derivation JSON");
  checkCmd->add_option("file", file)->required();
  checkCmd->add_flag("--require-tight", requireTight);
  checkCmd->add_flag("--strict-zero", strictZero);

  auto* synthCmd =
      app.add_subcommand("synth", "synthesize a tight derivation");
  synthCmd->add_option("file", file)->required();
  synthCmd->add_option("--fuel", fuel);
  synthCmd->add_option("-o,--output", outFile, "write the derivation JSON");

  auto* predictCmd =
      app.add_subcommand("predict", "predict the evaluation counter");
  predictCmd->add_option("file", file)->required();
  predictCmd->add_option("--fuel", fuel);
  predictCmd->add_flag("--verify", verify, "re-evaluate and compare");

  auto* diamondCmd =
      app.add_subcommand("diamond", "check one-step joinability");
  diamondCmd->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    pcfh::Strategy strat = strategy == "right" ? pcfh::Strategy::RightFirst
                                               : pcfh::Strategy::LeftFirst;
    if (evalCmd->parsed()) return runEval(file, fuel, trace, strat);
    if (nfCmd->parsed()) return runNf(file);
    if (checkCmd->parsed()) return runCheck(file, requireTight, strictZero);
    if (synthCmd->parsed()) return runSynth(file, fuel, outFile);
    if (predictCmd->parsed()) return runPredict(file, fuel, verify);
    if (diamondCmd->parsed()) return runDiamond(file);
  } catch (const pcfh::ParseError& e) {
    std::cerr << "parse error at bytes " << e.span.start << ".." << e.span.end
              << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const pcfh::JsonError& e) {
    std::cerr << "derivation JSON error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pcfh::OpenTermError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
