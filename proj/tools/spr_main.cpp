// spr: batch front end for the sign-pattern realization library.
//
// Every command prints one JSON object {"status", "payload", "diagnostics"} on stdout.
// Exit codes: 0 Pass, 1 Fail, 2 input error, 3 algorithm exhaustion.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spr/errors.hpp"
#include "spr/json_io.hpp"
#include "spr/matroid.hpp"
#include "spr/pattern.hpp"
#include "spr/realization.hpp"

namespace {

using spr::Json;

struct Outcome {
  std::string status = "Pass";
  Json payload = Json::object();
  std::vector<std::string> diagnostics;
  /// What --out writes; the payload when unset.
  std::optional<Json> artifact;
};

int exit_code(const std::string& status) {
  if (status == "Pass") return 0;
  if (status == "Fail") return 1;
  return 2;
}

void render_grid(std::ostream& os, const Json& m) {
  for (const Json& row : m.at("entries")) {
    std::string line;
    for (const Json& e : row) {
      std::string cell = e.is_string() ? e.get<std::string>()
                                       : e[0].get<std::string>() + "+" + e[1].get<std::string>() + "r";
      if (!line.empty()) line += "  ";
      line += cell;
    }
    os << "  " << line << '\n';
  }
}

void render_human(std::ostream& os, const Outcome& out) {
  os << "status: " << out.status << '\n';
  const Json& p = out.payload;
  if (p.is_object() && p.contains("entries")) {
    render_grid(os, p);
  } else if (p.is_object() && p.contains("matrix") && p["matrix"].is_object()) {
    render_grid(os, p["matrix"]);
  } else if (p.is_object() && p.contains("pattern") && p["pattern"].is_array()) {
    for (const Json& r : p["pattern"]) os << "  " << r.get<std::string>() << '\n';
  } else {
    os << p.dump(2) << '\n';
  }
  for (const std::string& d : out.diagnostics) os << "note: " << d << '\n';
}

int emit(const Outcome& out, bool human, const std::string& out_path, int code) {
  for (const std::string& d : out.diagnostics) std::cerr << "spr: " << d << '\n';
  if (human) {
    render_human(std::cout, out);
  } else {
    Json j;
    j["status"] = out.status;
    j["payload"] = out.payload;
    j["diagnostics"] = out.diagnostics;
    std::cout << j.dump(2) << '\n';
  }
  if (!out_path.empty() && out.status == "Pass") {
    std::ofstream f(out_path);
    f << (out.artifact ? *out.artifact : out.payload).dump(2) << '\n';
    if (!f) {
      std::cerr << "spr: cannot write '" << out_path << "'\n";
      return 2;
    }
  }
  return code;
}

spr::Matroid load_matroid(const std::string& path) {
  spr::Matroid m = spr::matroid_from_json(spr::read_json_file(path));
  spr::validate(m);
  return m;
}

spr::SignPattern load_pattern(const std::string& path) {
  const Json j = spr::read_json_file(path);
  return spr::is_matrix_json(j) ? spr::sign_of(spr::matrix_from_json(j)) : spr::pattern_from_json(j);
}

std::string search_result(const spr::KapranovSearchResult& r) {
  return r.found ? "Found" : "NotFoundWithinBounds";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact rational realization of sign patterns"};
  app.require_subcommand(1);
  app.fallthrough();

  bool human = false;
  std::string out_path;
  app.add_flag("--human", human, "Render grids instead of JSON");
  app.add_option("--out", out_path, "Write the produced matrix, pattern or matroid to a file");

  std::string input, original, candidate, rep_path;
  std::uint64_t seed = 0;
  int start_exp = spr::RoundingSchedule{}.start_exponent;
  std::optional<int> max_exp;
  std::size_t target = 0, search_rank = 0;
  long bound = 1;
  std::optional<long> search_bound;
  std::vector<std::size_t> search_columns;
  std::string field_tag = "Q";

  Outcome out;
  std::function<void()> action;

  auto* pattern = app.add_subcommand("pattern", "Sign pattern of a matrix");
  pattern->add_option("matrix", input)->required();
  pattern->callback([&] {
    action = [&] { out.payload = spr::pattern_to_json(spr::sign_of(spr::matrix_from_json(spr::read_json_file(input)))); };
  });

  auto* termrank = app.add_subcommand("termrank", "Term rank with matching and cover certificates");
  termrank->add_option("input", input, "Pattern or matrix JSON")->required();
  termrank->callback([&] {
    action = [&] { out.payload = spr::term_rank_to_json(spr::term_rank(load_pattern(input))); };
  });

  auto* rank = app.add_subcommand("rank", "Exact rank of a matrix");
  rank->add_option("matrix", input)->required();
  rank->callback([&] {
    action = [&] {
      out.payload = {{"rank", spr::rank(spr::matrix_from_json(spr::read_json_file(input)))}};
    };
  });

  auto* realize = app.add_subcommand("realize", "Rational matrix with the same sign pattern and rank");
  realize->add_option("matrix", input)->required();
  realize->add_option("--seed", seed);
  realize->add_option("--start-exp", start_exp, "First rounding exponent k (N = 2^k)");
  realize->add_option("--max-exp", max_exp, "Last rounding exponent; SPR_MAX_EXP sets the default");
  realize->callback([&] {
    action = [&] {
      spr::RoundingSchedule schedule;
      schedule.start_exponent = start_exp;
      if (const char* env = std::getenv("SPR_MAX_EXP")) {
        try {
          schedule.max_exponent = std::stoi(env);
        } catch (const std::exception&) {
          throw spr::ParseError("SPR_MAX_EXP is not an integer", 0);
        }
      }
      if (max_exp) schedule.max_exponent = *max_exp;
      const spr::ExactMatrix a = spr::matrix_from_json(spr::read_json_file(input));
      const spr::RealizationReport report = spr::realize(a, schedule, seed);
      out.payload = spr::report_to_json(report);
      out.artifact = out.payload["matrix"];
      if (!report.verdict.pass()) out.status = "Fail";
    };
  });

  auto* adjust = app.add_subcommand("adjust-rank", "Same pattern, prescribed rank");
  adjust->add_option("matrix", input)->required();
  adjust->add_option("--target", target)->required();
  adjust->add_option("--seed", seed);
  adjust->callback([&] {
    action = [&] {
      const spr::ExactMatrix a = spr::matrix_from_json(spr::read_json_file(input));
      const spr::ExactMatrix x = spr::pattern_rank_adjust(a, target, seed);
      out.payload = {{"rank", spr::rank(x)}, {"matrix", spr::matrix_to_json(x)}};
      out.artifact = out.payload["matrix"];
    };
  });

  auto* matroid = app.add_subcommand("matroid", "Matroid operations");
  matroid->require_subcommand(1);
  auto matroid_command = [&](const std::string& name, const std::string& help, bool needs_rep) {
    auto* sub = matroid->add_subcommand(name, help);
    sub->add_option("matroid", input)->required();
    if (needs_rep) sub->add_option("--rep", rep_path, "Representation JSON")->required();
    return sub;
  };

  matroid_command("validate", "Check the basis axioms", false)->callback([&] {
    action = [&] {
      const spr::Matroid m = spr::matroid_from_json(spr::read_json_file(input));
      try {
        spr::validate(m);
        out.payload = {{"valid", true}, {"ground", m.ground_size()}, {"rank", m.rank()}};
      } catch (const spr::AxiomViolation& e) {
        out.status = "Fail";
        out.payload = {{"valid", false}, {"violation", e.what()}};
        out.diagnostics.push_back(e.what());
      }
    };
  });
  matroid_command("dual", "Dual matroid", false)->callback([&] {
    action = [&] { out.payload = spr::matroid_to_json(spr::dual(load_matroid(input))); };
  });
  matroid_command("circuits", "Circuits in lexicographic order", false)->callback([&] {
    action = [&] { out.payload = {{"circuits", spr::element_sets_to_json(spr::circuits(load_matroid(input)))}}; };
  });
  matroid_command("cocircuits", "Cocircuits in lexicographic order", false)->callback([&] {
    action = [&] {
      out.payload = {{"cocircuits", spr::element_sets_to_json(spr::cocircuits(load_matroid(input)))}};
    };
  });
  matroid_command("comatrix", "Element-by-cocircuit incidence pattern", false)->callback([&] {
    action = [&] {
      const spr::CocircuitMatrix c = spr::cocircuit_matrix(load_matroid(input));
      out.payload = spr::pattern_to_json(c.incidence);
      out.payload["cocircuits"] = spr::element_sets_to_json(c.cocircuits);
      out.artifact = spr::pattern_to_json(c.incidence);
    };
  });
  matroid_command("dualrep", "Representation of the dual matroid", true)->callback([&] {
    action = [&] {
      const spr::Matroid m = load_matroid(input);
      const spr::Representation rep = spr::representation_from_json(spr::read_json_file(rep_path));
      spr::validate_representation(m, rep);
      out.payload = spr::representation_to_json(spr::dual_representation(m, rep));
    };
  });
  matroid_command("realize", "Cocircuit-pattern realization of rank rank(M)", true)->callback([&] {
    action = [&] {
      const spr::Matroid m = load_matroid(input);
      const spr::Representation rep = spr::representation_from_json(spr::read_json_file(rep_path));
      spr::validate_representation(m, rep);
      const spr::ExactMatrix x = spr::cocircuit_realization(m, rep);
      out.payload = {{"rank", spr::rank(x)}, {"matrix", spr::matrix_to_json(x)}};
      out.artifact = out.payload["matrix"];
    };
  });
  auto* witness = matroid_command("witness", "Dual cocircuit realization of a rank-3 matroid", true);
  witness->add_option("--search-bound", search_bound, "Run the rational search with this bound");
  witness->add_option("--search-columns", search_columns,
                      "1-indexed cocircuit columns to search over (default all)")
      ->delimiter(',');
  witness->callback([&] {
    action = [&] {
      const spr::Matroid m = load_matroid(input);
      const spr::Representation rep = spr::representation_from_json(spr::read_json_file(rep_path));
      spr::WitnessOptions options;
      options.search_bound = search_bound;
      for (std::size_t c : search_columns) {
        if (c == 0) throw spr::ParseError("search columns are 1-indexed", 0);
        options.search_columns.push_back(c - 1);
      }
      const spr::WitnessReport w = spr::irrationality_witness(m, rep, options);
      out.payload = spr::witness_to_json(w);
      if (w.search) out.payload["search"]["result"] = search_result(*w.search);
      out.artifact = out.payload["realization"];
    };
  });

  auto* search = app.add_subcommand("kapranov-search", "Bounded search for a low-rank matrix with given zeros");
  search->add_option("pattern", input, "Pattern (nonzero entries mark the support) or matrix JSON")->required();
  search->add_option("--rank", search_rank)->required();
  search->add_option("--bound", bound)->required();
  search->add_option("--field", field_tag, "Field tag for the witness");
  search->callback([&] {
    action = [&] {
      const spr::KapranovSearchResult r =
          spr::kapranov_search(load_pattern(input), search_rank, spr::FieldTag::parse(field_tag), bound);
      out.payload = spr::search_to_json(r);
      out.payload["result"] = search_result(r);
      if (r.witness) out.artifact = out.payload["witness"];
    };
  });

  auto* verify = app.add_subcommand("verify", "Compare sign pattern, rank and rationality");
  verify->add_option("--original", original)->required();
  verify->add_option("--candidate", candidate)->required();
  verify->callback([&] {
    action = [&] {
      const spr::ExactMatrix a = spr::matrix_from_json(spr::read_json_file(original));
      const spr::ExactMatrix b = spr::matrix_from_json(spr::read_json_file(candidate));
      const spr::Verdict v = spr::verify_realization(a, b);
      out.payload = spr::verdict_to_json(v);
      if (!v.pass()) {
        out.status = "Fail";
        if (!v.pattern_equal) out.diagnostics.push_back("sign patterns differ");
        if (!v.rank_equal) out.diagnostics.push_back("ranks differ");
        if (!v.rational) out.diagnostics.push_back("candidate has irrational entries");
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Outcome err;
    err.status = "Error";
    err.payload = nullptr;
    err.diagnostics.push_back(e.what());
    return emit(err, false, "", 2);
  }

  auto fail = [&](const std::string& status, const std::string& message, int code) {
    out.status = status;
    out.payload = nullptr;
    out.artifact.reset();
    out.diagnostics.push_back(message);
    return emit(out, human, out_path, code);
  };
  try {
    action();
  } catch (const spr::RoundingExhausted& e) {
    return fail("Error", e.what(), 3);
  } catch (const spr::SamplingExhausted& e) {
    return fail("Error", e.what(), 3);
  } catch (const spr::InternalVerificationFailed& e) {
    return fail("Fail", e.what(), 1);
  } catch (const spr::ParseError& e) {
    return fail("Error", std::string(e.what()) + " (position " + std::to_string(e.position()) + ")", 2);
  } catch (const spr::Error& e) {
    return fail("Error", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return fail("Error", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return fail("Error", e.what(), 2);
  }
  return emit(out, human, out_path, exit_code(out.status));
}
