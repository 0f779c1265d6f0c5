// equilef: batch front end for documents and representation-ring arithmetic.
//
// Exit codes: 0 all checks pass, 1 a verification mismatch, 2 bad input.

#include "equilef.hpp"
#include "equilef/report.hpp"
#include "equilef/selftest.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

using namespace equilef;

namespace {

struct RepringArgs {
  int k = 1;
  int r = 0;
  int d = 0;
  int to = 0;
  std::vector<std::string> values;
};

std::string factor_line(int k) {
  std::string out;
  for (const auto& [d, phi] : cyclotomic_polynomials(k))
    out += (out.empty() ? "" : "; ") + ("d=" + std::to_string(d) + ": " + print_upoly(phi, "t"));
  return out;
}

std::string run_repring(const std::string& op, const RepringArgs& a) {
  if (op == "factor") return factor_line(a.k);
  Group g(a.r, a.k);
  auto need = [&](std::size_t n) {
    if (a.values.size() != n)
      throw DocumentError("repring " + op + " takes " + std::to_string(n) + " value(s), got " +
                          std::to_string(a.values.size()));
  };
  if (op == "mul") {
    need(2);
    return (parse_rep(a.values[0], g) * parse_rep(a.values[1], g)).str();
  }
  need(1);
  RepElem v = parse_rep(a.values[0], g);
  if (op == "restrict") {
    if (!a.d) throw DocumentError("repring restrict needs --d");
    return restrict(v, Subgroup{a.d}).str();
  }
  if (op == "induce") {
    if (!a.to) throw DocumentError("repring induce needs --to");
    return induce(v, a.to).str();
  }
  if (op == "localize") return a.d ? localize(v, a.d).str() : total_fractions(v).str();
  throw DocumentError("unknown repring operation '" + op + "'");
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("EQUILEF_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw DocumentError(std::string("EQUILEF_SEED is not a number: ") + s);
    }
  }
  return 1;
}

void emit(const Report& r, bool json) {
  if (json)
    std::cout << r.json.dump(2) << "\n";
  else
    std::cout << r.text();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Lefschetz indices and traces over Rep(T^r x Z/k).", "equilef"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string method = "geometric", file;
  auto* trace = app.add_subcommand("trace", "Trace every item of a document with one method");
  trace->add_option("--method", method, "geometric, homological, categorical or hs")
      ->check(CLI::IsMember({"geometric", "homological", "categorical", "hs"}));
  trace->add_option("file", file, "Input document")->required();

  auto* verify = app.add_subcommand("verify", "Cross-check every trace in a document");
  verify->add_option("file", file, "Input document")->required();

  RepringArgs ra;
  std::string op;
  auto* repring = app.add_subcommand("repring", "Arithmetic in Rep(T^r x Z/k)");
  repring->add_option("op", op, "mul, restrict, induce, localize or factor")
      ->required()
      ->check(CLI::IsMember({"mul", "restrict", "induce", "localize", "factor"}));
  repring->add_option("values", ra.values, "Elements in canonical syntax");
  repring->add_option("--k", ra.k, "Cyclic order k")->check(CLI::PositiveNumber);
  repring->add_option("--r", ra.r, "Torus rank r")->check(CLI::NonNegativeNumber);
  repring->add_option("--d", ra.d, "Subgroup or component divisor d");
  repring->add_option("--to", ra.to, "Target cyclic order for induce");

  std::uint64_t seed = 0;
  int cases = 20;
  auto* self = app.add_subcommand("selftest", "Randomized property suites");
  auto* seed_opt = self->add_option("--seed", seed, "Seed (default: $EQUILEF_SEED or 1)");
  self->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (trace->parsed()) {
      emit(trace_report(load_document(file), parse_trace_method(method)), json);
      return 0;
    }
    if (verify->parsed()) {
      Report r = verify_report(load_document(file));
      emit(r, json);
      return r.ok ? 0 : 1;
    }
    if (repring->parsed()) {
      std::string result = run_repring(op, ra);
      if (json)
        std::cout << Json{{"op", op}, {"result", result}}.dump(2) << "\n";
      else
        std::cout << result << "\n";
      return 0;
    }
    if (self->parsed()) {
      if (!*seed_opt) seed = default_seed();
      SelftestResult r = selftest(seed, cases);
      if (json)
        std::cout << Json{{"seed", seed}, {"cases", cases}, {"lines", r.lines}, {"ok", r.ok}}.dump(2) << "\n";
      else
        for (const auto& l : r.lines) std::cout << l << "\n";
      return r.ok ? 0 : 1;
    }
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
