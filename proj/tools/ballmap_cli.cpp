// Command-line front end: verification, normalization, group analysis, and
// the synthesis constructions, all through the shared JSON schemas.
//
// Exit codes: 0 success, 1 property failure (not proper, not a member,
// audit violations, empty search), 2 input error, 3 numerical
// non-convergence.

#include <algorithm>
#include <cctype>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ballmap/constructions.hpp"
#include "ballmap/normal_form.hpp"
#include "ballmap/sampling.hpp"
#include "ballmap/serialization.hpp"
#include "ballmap/symmetry.hpp"
#include "ballmap/unitary.hpp"

namespace {

using namespace ballmap;

int g_status = 0;  // promoted to the process exit code on clean runs

void emit(const Json& report, const std::string& out_path) {
  std::cout << report.dump(2) << '\n';
  if (!out_path.empty()) write_json_file(out_path, report);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

GroupId parse_group(const std::string& name, const std::string& a,
                    const std::string& b) {
  const auto slice = [](const std::string& v) {
    if (v == "*" || v.empty()) return -1;
    const int parsed = std::stoi(v);
    if (parsed < 0) throw CLI::ValidationError("--a/--b must be >= 0 or *");
    return parsed;
  };
  const std::string key = lower(name);
  if (key == "a") return GroupId::simple(GroupId::Kind::A);
  if (key == "gamma") return GroupId::simple(GroupId::Kind::Gamma);
  if (key == "g") return GroupId::simple(GroupId::Kind::G);
  if (key == "t") return GroupId::simple(GroupId::Kind::T);
  if (key == "h") return GroupId::simple(GroupId::Kind::H);
  if (key == "d") return GroupId::simple(GroupId::Kind::D);
  if (key == "sigma") return GroupId::simple(GroupId::Kind::Sigma);
  if (key == "delta") return GroupId::delta(slice(a), slice(b));
  throw CLI::ValidationError("unknown group " + name);
}

Eigen::VectorXd parse_reals(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) values.push_back(std::stod(item));
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<Eigen::Index>(values.size()));
}

std::vector<int> parse_indices(const std::string& csv) {
  std::vector<int> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) values.push_back(std::stoi(item));
  return values;
}

std::vector<Eigen::MatrixXcd> build_family(const std::string& family, int dim,
                                           int torus_samples,
                                           std::uint64_t seed,
                                           const std::string& candidates_path) {
  if (!candidates_path.empty()) {
    std::vector<Eigen::MatrixXcd> items;
    for (const auto& item : read_json_file(candidates_path).at("items"))
      items.push_back(unitary_from_json(item));
    return items;
  }
  const std::string key = lower(family);
  if (key == "sign-diagonal") return sign_diagonal_family(dim);
  if (key == "signed-permutation") return signed_permutation_family(dim);
  if (key == "torus") {
    Rng rng(seed);
    return diagonal_torus_samples(dim, torus_samples, rng);
  }
  throw CLI::ValidationError("unknown candidate family " + family);
}

Json unitary_list_to_json(const std::vector<Eigen::MatrixXcd>& list) {
  Json out = Json::array();
  for (const auto& u : list) out.push_back(unitary_to_json(u));
  return out;
}

Json sigma_structure_to_json(const SigmaGroupStructure& structure) {
  Json blocks = Json::array();
  for (const auto& block : structure.blocks)
    blocks.push_back(
        {{"kind", block.kind == SigmaGroupStructure::BlockKind::unitary
                      ? "unitary"
                      : "orthogonal"},
         {"size", block.size}});
  return blocks;
}

struct CommonOptions {
  std::uint64_t seed = 12345;
  double tolerance = tol::membership;
  int samples = 500;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--seed", opts.seed, "random seed for sampling");
  cmd->add_option("--tol", opts.tolerance, "membership / residual threshold");
  cmd->add_option("--samples", opts.samples, "sphere sample count");
  cmd->add_option("--out", opts.out_path, "write the report JSON here too");
}

void setup_verify(CLI::App& app) {
  auto* cmd = app.add_subcommand("verify", "check properness and normal form");
  auto opts = std::make_shared<CommonOptions>();
  auto map_path = std::make_shared<std::string>();
  cmd->add_option("--map", *map_path, "map JSON file")->required();
  add_common(cmd, *opts);
  cmd->callback([opts, map_path] {
    const RationalBallMap f = map_from_json(read_json_file(*map_path));
    const PropernessReport proper =
        is_proper(f, opts->samples, opts->seed, tol::sphere_rel);
    const LowestTerms lowest = lowest_terms_check(f, 20, opts->seed);
    const NormalFormReport nf = normal_form_report(f);
    Json report{{"proper", proper.proper},
                {"properness", properness_to_json(proper)},
                {"lowest_terms", lowest_terms_label(lowest)},
                {"normal_form", nf.is_normal},
                {"normal_form_report", normal_form_report_to_json(nf)},
                {"degree", f.degree()},
                {"n", f.source_dimension()},
                {"N", f.target_dimension()},
                {"sigma", std::vector<double>(
                              nf.sigma.data(), nf.sigma.data() + nf.sigma.size())}};
    emit(report, opts->out_path);
    if (!proper.proper || lowest == LowestTerms::failed) g_status = 1;
  });
}

void setup_normalize(CLI::App& app) {
  auto* cmd = app.add_subcommand("normalize", "bring a map to normal form");
  auto opts = std::make_shared<CommonOptions>();
  auto map_path = std::make_shared<std::string>();
  auto cert_path = std::make_shared<std::string>();
  cmd->add_option("--map", *map_path, "map JSON file")->required();
  cmd->add_option("--cert", *cert_path, "write the certificate JSON here");
  add_common(cmd, *opts);
  cmd->callback([opts, map_path, cert_path] {
    const RationalBallMap f = map_from_json(read_json_file(*map_path));
    const NormalizationCertificate cert = normalize(f, opts->seed);
    const Json certificate = normalization_to_json(cert);
    Json report{{"map", map_to_json(cert.normalized)},
                {"certificate", certificate}};
    std::cout << report.dump(2) << '\n';
    if (!opts->out_path.empty())
      write_json_file(opts->out_path, map_to_json(cert.normalized));
    if (!cert_path->empty()) write_json_file(*cert_path, certificate);
  });
}

void setup_groups(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "groups", "membership, enumeration and audits for the symmetry groups");
  auto opts = std::make_shared<CommonOptions>();
  struct Args {
    std::string map_path, group = "g", a = "*", b = "*";
    std::string unitary_path, target_path, family, candidates_path;
    int torus_samples = 20;
    bool audit = false;
    bool structure = false;
  };
  auto args = std::make_shared<Args>();
  cmd->add_option("--map", args->map_path, "map JSON file")->required();
  cmd->add_option("--group", args->group,
                  "A, Gamma, G, T, H, D, Sigma or Delta");
  cmd->add_option("--a", args->a, "row degree for Delta (* = any)");
  cmd->add_option("--b", args->b, "column degree for Delta (* = any)");
  cmd->add_option("--unitary", args->unitary_path, "source unitary JSON");
  cmd->add_option("--target", args->target_path, "target unitary JSON");
  cmd->add_option("--enumerate", args->family,
                  "candidate family: sign-diagonal, signed-permutation, torus");
  cmd->add_option("--candidates", args->candidates_path,
                  "explicit candidate list JSON {\"items\": [unitary...]}");
  cmd->add_option("--torus-samples", args->torus_samples,
                  "sample count for the torus family");
  cmd->add_flag("--audit", args->audit, "run the containment audit");
  cmd->add_flag("--structure", args->structure,
                "report the block structure of the quadratic invariants");
  add_common(cmd, *opts);
  cmd->callback([opts, args] {
    const RationalBallMap f = map_from_json(read_json_file(args->map_path));
    const GroupId id = parse_group(args->group, args->a, args->b);

    if (args->structure) {
      const NormalFormReport nf = normal_form_report(f);
      const SigmaGroupStructure structure =
          sigma_group_structure(nf.sigma, opts->tolerance);
      emit(Json{{"sigma", std::vector<double>(nf.sigma.data(),
                                              nf.sigma.data() + nf.sigma.size())},
                {"blocks", sigma_structure_to_json(structure)}},
           opts->out_path);
      return;
    }

    const bool family_given =
        !args->family.empty() || !args->candidates_path.empty();

    if (args->audit) {
      const auto family = build_family(
          args->family.empty() ? "signed-permutation" : args->family,
          f.source_dimension(), args->torus_samples, opts->seed,
          args->candidates_path);
      const ContainmentAudit audit =
          containment_audit(f, family, {{2, 0}, {0, 2}, {1, 1}, {2, 2},
                                        {-1, 0}, {-1, -1}},
                            opts->tolerance);
      Json violations = Json::array();
      for (const auto& violation : audit.violations)
        violations.push_back({{"candidate", violation.candidate},
                              {"relation", violation.relation}});
      emit(Json{{"candidates_checked", audit.candidates_checked},
                {"violations", violations}},
           opts->out_path);
      if (!audit.violations.empty()) g_status = 1;
      return;
    }

    if (id.kind == GroupId::Kind::T) {
      if (args->target_path.empty())
        throw CLI::ValidationError("--group T needs --target");
      if (!family_given)
        throw CLI::ValidationError("--group T needs --enumerate or --candidates");
      const auto family =
          build_family(args->family.empty() ? "sign-diagonal" : args->family,
                       f.source_dimension(), args->torus_samples, opts->seed,
                       args->candidates_path);
      const auto found = t_group_search(
          f, unitary_from_json(read_json_file(args->target_path)), family,
          opts->tolerance);
      Json report{{"found", found.has_value()}};
      if (found) report["unitary"] = unitary_to_json(*found);
      emit(report, opts->out_path);
      if (!found) g_status = 1;
      return;
    }

    if (family_given) {
      const int dim = id.kind == GroupId::Kind::H ? f.target_dimension()
                                                  : f.source_dimension();
      const auto family =
          build_family(args->family.empty() ? "sign-diagonal" : args->family,
                       dim, args->torus_samples, opts->seed,
                       args->candidates_path);
      const auto members =
          enumerate_members(f, id, family, opts->tolerance);
      emit(Json{{"group", id.name()},
                {"candidates", family.size()},
                {"members", unitary_list_to_json(members)},
                {"count", members.size()}},
           opts->out_path);
      return;
    }

    if (args->unitary_path.empty() && id.kind != GroupId::Kind::H)
      throw CLI::ValidationError("membership needs --unitary (or --enumerate)");
    const Eigen::MatrixXcd u =
        args->unitary_path.empty()
            ? Eigen::MatrixXcd::Identity(f.source_dimension(),
                                         f.source_dimension())
            : unitary_from_json(read_json_file(args->unitary_path));
    std::optional<Eigen::MatrixXcd> v;
    if (!args->target_path.empty())
      v = unitary_from_json(read_json_file(args->target_path));
    const GroupVerdict verdict = membership(f, id, u, v, opts->tolerance);
    emit(Json{{"group", id.name()},
              {"member", verdict.member},
              {"residual", verdict.residual},
              {"criterion", verdict.criterion}},
         opts->out_path);
    if (!verdict.member) g_status = 1;
  });
}

void emit_construction(const ConstructionResult& result,
                       const CommonOptions& opts,
                       const std::string& cert_path) {
  const Json certificate = construction_to_json(result);
  std::cout << certificate.dump(2) << '\n';
  if (!opts.out_path.empty())
    write_json_file(opts.out_path, map_to_json(result.map));
  if (!cert_path.empty()) write_json_file(cert_path, certificate);
  if (!result.properness.proper) g_status = 1;
}

void setup_construct(CLI::App& app) {
  auto* cmd = app.add_subcommand("construct", "synthesize proper maps");
  cmd->require_subcommand(1);

  {
    auto* sub = cmd->add_subcommand(
        "denom", "map with prescribed denominator 1 + eps G");
    auto opts = std::make_shared<CommonOptions>();
    auto g_path = std::make_shared<std::string>();
    auto cert_path = std::make_shared<std::string>();
    auto degree = std::make_shared<int>(0);
    auto dilate = std::make_shared<bool>(false);
    sub->add_option("--G", *g_path, "perturbation polynomial JSON")->required();
    sub->add_option("--d", *degree, "numerator degree")->required();
    sub->add_flag("--dilate", *dilate, "use 1 + G(eps z) instead of 1 + eps G");
    sub->add_option("--cert", *cert_path, "write the certificate JSON here");
    add_common(sub, *opts);
    sub->callback([opts, g_path, cert_path, degree, dilate] {
      const Polynomial g = polynomial_from_json(read_json_file(*g_path));
      emit_construction(construct_with_denominator(g, *degree, *dilate), *opts,
                        *cert_path);
    });
  }

  {
    auto* sub = cmd->add_subcommand(
        "even-quartic", "even degree-4 map with quadratic denominator");
    auto opts = std::make_shared<CommonOptions>();
    auto sigma_csv = std::make_shared<std::string>();
    auto cert_path = std::make_shared<std::string>();
    sub->add_option("--sigma", *sigma_csv, "comma-separated coefficients")
        ->required();
    sub->add_option("--cert", *cert_path, "write the certificate JSON here");
    add_common(sub, *opts);
    sub->callback([opts, sigma_csv, cert_path] {
      emit_construction(construct_even_quartic(parse_reals(*sigma_csv)), *opts,
                        *cert_path);
    });
  }

  {
    auto* sub = cmd->add_subcommand(
        "invariant", "polynomial map with prescribed invariance group");
    auto opts = std::make_shared<CommonOptions>();
    auto spec_path = std::make_shared<std::string>();
    auto cert_path = std::make_shared<std::string>();
    sub->add_option("--spec", *spec_path, "invariant form list JSON")
        ->required();
    sub->add_option("--cert", *cert_path, "write the certificate JSON here");
    add_common(sub, *opts);
    sub->callback([opts, spec_path, cert_path] {
      const InvariantPolynomialSpec spec =
          invariant_spec_from_json(read_json_file(*spec_path));
      emit_construction(construct_invariant_map(spec), *opts, *cert_path);
    });
  }

  {
    auto* sub = cmd->add_subcommand(
        "example", "the explicit 2-ball to 7-ball degree-4 family");
    auto opts = std::make_shared<CommonOptions>();
    auto s1 = std::make_shared<double>(0.0);
    auto s2 = std::make_shared<double>(0.0);
    sub->add_option("--sigma1", *s1, "first denominator coefficient")
        ->required();
    sub->add_option("--sigma2", *s2, "second denominator coefficient")
        ->required();
    add_common(sub, *opts);
    sub->callback([opts, s1, s2] {
      const RationalBallMap f = example_map(*s1, *s2);
      const PropernessReport proper =
          is_proper(f, opts->samples, opts->seed, tol::sphere_rel);
      const NormalFormReport nf = normal_form_report(f);
      Json report{{"map", map_to_json(f)},
                  {"properness", properness_to_json(proper)},
                  {"normal_form", nf.is_normal}};
      std::cout << report.dump(2) << '\n';
      if (!opts->out_path.empty())
        write_json_file(opts->out_path, map_to_json(f));
      if (!proper.proper) g_status = 1;
    });
  }
}

void setup_tensor(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "tensor", "tensor selected components with a sphere-normed tuple");
  auto opts = std::make_shared<CommonOptions>();
  struct Args {
    std::string map_path, factor_path, indices_csv;
  };
  auto args = std::make_shared<Args>();
  cmd->add_option("--map", args->map_path, "map JSON file")->required();
  cmd->add_option("--factor", args->factor_path,
                  "factor tuple JSON {\"n\": int, \"components\": [poly...]}")
      ->required();
  cmd->add_option("--indices", args->indices_csv,
                  "comma-separated component indices to expand")
      ->required();
  add_common(cmd, *opts);
  cmd->callback([opts, args] {
    const RationalBallMap f = map_from_json(read_json_file(args->map_path));
    const Json factor_json = read_json_file(args->factor_path);
    std::vector<Polynomial> comps;
    for (const auto& item : factor_json.at("components"))
      comps.push_back(polynomial_from_json(item));
    const PolyMap factor(factor_json.at("n").get<int>(), std::move(comps));
    const RationalBallMap result =
        tensor_components(f, parse_indices(args->indices_csv), factor);
    const PropernessReport proper =
        is_proper(result, opts->samples, opts->seed, tol::sphere_rel);
    Json report{{"map", map_to_json(result)},
                {"properness", properness_to_json(proper)}};
    std::cout << report.dump(2) << '\n';
    if (!opts->out_path.empty())
      write_json_file(opts->out_path, map_to_json(result));
    if (!proper.proper) g_status = 1;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational proper ball map toolkit"};
  app.require_subcommand(1);
  setup_verify(app);
  setup_normalize(app);
  setup_groups(app);
  setup_construct(app);
  setup_tensor(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 3;
  }
  return g_status;
}
