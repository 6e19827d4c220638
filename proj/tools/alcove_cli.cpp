// Command-line frontend: certificates, alcove location, canonical
// decompositions, Demazure characters and the verification sweeps.
//
// Exit codes: 0 on success / PASS, 1 on verification failure, 2 on usage
// errors (bad labels, malformed weights, unsupported modes).

#include "alcove/serialize.hpp"
#include "alcove/sweeps.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <memory>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace alcove;

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
  if (out.empty()) throw ParseError("empty coordinate list");
  return out;
}

Weight parse_weight(const RootSystem& rs, const std::string& s) {
  Weight w{Coords(parse_rat_list(s))};
  rs.check_weight(w);
  return w;
}

const char* kNodeOrderHelp =
    "Weights are comma-separated coordinates in the fundamental-weight basis\n"
    "of the finite part, in Bourbaki node order (chains numbered from the\n"
    "long end in B, from the short end in C; in D the fork nodes are n-1, n;\n"
    "in E the branch node is 2, attached to node 4; in F4 nodes 1,2 are long;\n"
    "in G2 node 1 is long, so the Cartan matrix rows are (2,-1), (-3,2)).";

std::unique_ptr<CharCache> make_cache(const std::string& flag_dir) {
  if (!flag_dir.empty()) return std::make_unique<CharCache>(flag_dir);
  if (const char* env = std::getenv("ALCOVE_CACHE_DIR"); env && *env)
    return std::make_unique<CharCache>(env);
  return nullptr;
}

std::string dims_product_line(const FusionReport& rep) {
  std::string s = std::to_string(rep.lhs_dim) + " = ";
  for (std::size_t i = 0; i < rep.factor_dims.size(); ++i) {
    if (i) s += " x ";
    s += std::to_string(rep.factor_dims[i]);
  }
  return s;
}

void print_graded(std::ostream& os, const GradedClassicalChar& g) {
  for (const auto& [deg, layer] : g.layers) {
    os << "  q^" << deg << " * {";
    bool first = true;
    for (const auto& [w, m] : layer) {
      if (!first) os << ", ";
      first = false;
      os << weight_vec_str(w) << ":" << m;
    }
    os << "}\n";
  }
}

int run_certificate(const std::string& algebra, long long level, const std::string& weight,
                    bool as_json, bool verify_only, const std::string& input) {
  RootSystem rs = build_root_system(algebra);
  if (verify_only) {
    std::ifstream in(input);
    if (!in) throw UsageError("cannot open certificate file '" + input + "'");
    SteinbergCertificate cert = certificate_from_json(rs, nlohmann::json::parse(in));
    VerifyResult v = verify_certificate(rs, cert);
    std::cout << (v.ok ? "PASS" : ("FAIL " + v.reason)) << "\n";
    return v.ok ? 0 : 1;
  }
  Weight lambda = parse_weight(rs, weight);
  SteinbergCertificate cert = steinberg_certificate(rs, level, lambda);
  VerifyResult v = verify_certificate(rs, cert);
  if (as_json) {
    json j = certificate_to_json(rs, cert);
    j["verified"] = v.ok;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "algebra:   " << rs.label().str() << "\n"
              << "level:     " << level << "\n"
              << "lambda:    " << lambda.str() << "\n"
              << "mu:        " << cert.mu.str() << "  (root coords "
              << coords_to_json(rs.root_coords(cert.mu)).dump() << ")\n"
              << "w word:    " << json(rs.reduced_word(cert.w)).dump() << "\n"
              << "Lambda:    classical " << cert.Lambda.classical.str() << "  level "
              << cert.Lambda.level << "  degree " << rat_str(cert.Lambda.degree) << "\n"
              << "vD length: " << cert.vD_word.size() << "\n"
              << "verified:  " << (v.ok ? "true" : ("false (" + v.reason + ")")) << "\n";
  }
  return v.ok ? 0 : 1;
}

int run_locate(const std::string& algebra, const std::string& point, bool as_json) {
  RootSystem rs = build_root_system(algebra);
  Weight base = parse_weight(rs, point);
  AlcoveCertificate cert = fold_to_alcove(rs, LexPoint{base, rs.rho()});
  if (as_json) {
    std::cout << alcove_certificate_to_json(rs, cert).dump(1) << "\n";
  } else {
    std::cout << "word:       " << json(cert.word).dump() << "\n"
              << "u word:     " << json(rs.reduced_word(cert.u)).dump() << "\n"
              << "transl:     " << coords_to_json(rs.root_coords(cert.element.transl())).dump()
              << " (root coords)\n"
              << "mu':        " << cert.mu_prime.str() << "\n"
              << "in M+:      " << (m_plus_contains(rs, cert.mu_prime) ? "yes" : "no") << "\n";
  }
  return 0;
}

int run_decompose(const std::string& algebra, long long level, const std::string& weight,
                  bool as_json) {
  RootSystem rs = build_root_system(algebra);
  Weight lambda = parse_weight(rs, weight);
  WeightDecomposition d = canonical_decomposition(rs, level, lambda);
  std::vector<long long> mult(rs.rank(), 0);
  for (const Weight& p : d.parts)
    for (int i = 0; i < rs.rank(); ++i)
      if (p.fw[i] == 1) ++mult[i];
  if (as_json) {
    json j;
    j["algebra"] = rs.label().str();
    j["level"] = level;
    j["lambda"] = weight_to_json(lambda);
    j["multiplicities"] = mult;
    j["remainder"] = weight_to_json(d.remainder);
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "lambda = " << level << " * (";
    bool first = true;
    for (int i = 0; i < rs.rank(); ++i) {
      if (mult[i] == 0) continue;
      if (!first) std::cout << " + ";
      first = false;
      std::cout << mult[i] << "*w" << (i + 1);
    }
    if (first) std::cout << "0";
    std::cout << ") + " << d.remainder.str() << "\n";
  }
  return 0;
}

int run_character(const std::string& algebra, long long level, const std::string& weight,
                  bool as_json, bool classical_only, const std::string& cache_dir) {
  RootSystem rs = build_root_system(algebra);
  Weight lambda = parse_weight(rs, weight);
  auto cache = make_cache(cache_dir);
  CharPoly f = demazure_character(rs, level, lambda, cache.get());
  if (as_json) {
    std::cout << character_to_json(rs, lambda, f).dump(1) << "\n";
    return 0;
  }
  std::cout << "dimension: " << dimension(f) << "\n";
  if (classical_only) {
    for (const auto& [w, m] : classical_character(f))
      std::cout << "  " << weight_vec_str(w) << ": " << m << "\n";
  } else {
    print_graded(std::cout, graded_classical_character(f));
  }
  return 0;
}

int run_verify_fusion(const std::string& algebra, long long level, const std::string& weight,
                      const std::string& parts, const std::string& remainder, bool as_json,
                      const std::string& cache_dir) {
  RootSystem rs = build_root_system(algebra);
  Weight lambda = parse_weight(rs, weight);
  auto cache = make_cache(cache_dir);
  WeightDecomposition dec;
  if (parts.empty()) {
    dec = canonical_decomposition(rs, level, lambda);
  } else {
    dec.level = level;
    std::stringstream ss(parts);
    std::string tok;
    while (std::getline(ss, tok, ';')) dec.parts.push_back(parse_weight(rs, tok));
    dec.remainder = remainder.empty() ? Weight(rs.rank()) : parse_weight(rs, remainder);
  }
  FusionReport rep = verify_fusion(rs, level, lambda, dec, cache.get());
  if (as_json) {
    json j;
    j["algebra"] = rs.label().str();
    j["level"] = level;
    j["lambda"] = weight_to_json(lambda);
    j["pass"] = rep.pass;
    j["lhs_dim"] = rep.lhs_dim;
    j["rhs_dim"] = rep.rhs_dim;
    j["factor_dims"] = rep.factor_dims;
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "factors:   " << dims_product_line(rep) << "\n"
              << "classical: " << (rep.pass ? "MATCH" : ("DIFFER (" + rep.detail + ")")) << "\n"
              << (rep.pass ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass ? 0 : 1;
}

int run_verify_qsystem(const std::string& algebra, long long level, const std::string& weight,
                       int node, bool as_json, const std::string& cache_dir) {
  RootSystem rs = build_root_system(algebra);
  Weight lambda = parse_weight(rs, weight);
  auto cache = make_cache(cache_dir);
  QSystemReport rep = verify_qsystem(rs, level, lambda, node, cache.get());
  if (as_json) {
    json j;
    j["algebra"] = rs.label().str();
    j["level"] = level;
    j["lambda"] = weight_to_json(lambda);
    j["node"] = node;
    j["mu"] = weight_to_json(rep.mu);
    j["shift"] = rep.shift;
    j["dims"] = {rep.dim_lhs, rep.dim_sub, rep.dim_quot};
    j["pass_classical"] = rep.pass_classical;
    j["pass_graded"] = rep.pass_graded;
    if (!rep.detail_classical.empty()) j["detail_classical"] = rep.detail_classical;
    if (!rep.detail_graded.empty()) j["detail_graded"] = rep.detail_graded;
    std::cout << j.dump(1) << "\n";
  } else {
    std::cout << "mu:        " << rep.mu.str() << "\n"
              << "dims:      " << rep.dim_lhs << " = " << rep.dim_sub << " + " << rep.dim_quot
              << "\n"
              << "classical: " << (rep.pass_classical ? "MATCH" : "DIFFER " + rep.detail_classical)
              << "\n"
              << "graded:    "
              << (rep.pass_graded ? ("MATCH (shift " + std::to_string(rep.shift) + ")")
                                  : "DIFFER " + rep.detail_graded)
              << "\n"
              << (rep.pass() ? "PASS" : "FAIL") << "\n";
  }
  return rep.pass() ? 0 : 1;
}

int run_selftest(const std::string& labels_csv, long long samples, std::uint64_t seed) {
  std::vector<AffineLabel> labels;
  if (labels_csv.empty()) {
    labels = certificate_sweep_labels();
  } else {
    std::stringstream ss(labels_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) labels.push_back(AffineLabel::parse(tok));
  }
  std::vector<std::string> lines;
  bool all_ok = true;
  for (const AffineLabel& l : labels) {
    RootSystem rs(l);
    std::vector<SweepOutcome> outcomes;
    outcomes.push_back(sweep_certificate_soundness(rs, samples, seed));
    outcomes.push_back(sweep_dominant_alcoves(rs, samples, seed));
    outcomes.push_back(sweep_reduced_words(rs, samples, seed));
    outcomes.push_back(sweep_fold_uniqueness(rs, samples, seed));
    if (rs.untwisted()) outcomes.push_back(sweep_demazure_idempotence(rs, samples, seed));
    for (const auto& o : outcomes) {
      all_ok = all_ok && o.ok();
      lines.push_back(o.line());
    }
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& s : lines) std::cout << s << "\n";
  std::cout << (all_ok ? "PASS" : "FAIL") << " selftest\n";
  return all_ok ? 0 : 1;
}

struct CacheEntryStatus {
  std::string file;
  bool valid = false;
  std::string info;
};

std::vector<CacheEntryStatus> scan_cache(const std::filesystem::path& dir) {
  std::vector<CacheEntryStatus> out;
  if (!std::filesystem::exists(dir)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    CacheEntryStatus st;
    st.file = p.filename().string();
    try {
      std::ifstream in(p);
      detail::CacheEntry e = detail::char_poly_from_json(nlohmann::json::parse(in));
      RootSystem rs(e.label);
      Weight lambda(Coords(e.lambda_coords.begin(), e.lambda_coords.end()));
      if (!rs.is_dominant_integral(lambda)) throw ParseError("stored lambda not dominant integral");
      long long dim = dimension(e.poly);
      if (dim <= 0) throw ParseError("nonpositive dimension");
      // highest-weight invariants: lambda is the unique dominance-maximal
      // classical weight, multiplicity 1
      ClassicalChar c = classical_character(e.poly);
      auto it = c.find(e.lambda_coords);
      if (it == c.end() || it->second != 1) throw ParseError("lambda is not an extreme weight");
      for (const auto& [w, m] : c) {
        Weight diff = lambda;
        for (int i = 0; i < rs.rank(); ++i) diff.fw[i] -= Rat(w[i]);
        Coords rc = rs.root_coords(diff);
        for (const Rat& x : rc)
          if (!is_integer(x) || x < 0) throw ParseError("weight above lambda in dominance order");
      }
      if (Rat(e.level) >= rs.pair_theta(lambda) &&
          Int(dim) != weyl_dimension(rs, lambda))
        throw ParseError("stable dimension does not match the Weyl formula");
      st.valid = true;
      st.info = e.label.str() + " level " + std::to_string(e.level) + " lambda " + lambda.str() +
                " dim " + std::to_string(dim);
    } catch (const std::exception& ex) {
      st.valid = false;
      st.info = ex.what();
    }
    out.push_back(std::move(st));
  }
  return out;
}

int run_cache(const std::string& action, const std::string& dir_flag) {
  auto cache = make_cache(dir_flag);
  if (!cache) throw UsageError("cache admin needs --cache-dir or ALCOVE_CACHE_DIR");
  std::filesystem::path dir = cache->dir();
  auto entries = scan_cache(dir);
  bool any_invalid = false;
  if (action == "list" || action == "validate") {
    for (const auto& e : entries) {
      if (e.valid)
        std::cout << (action == "validate" ? "VALID   " : "") << e.file << "  " << e.info << "\n";
      else {
        std::cout << "INVALID " << e.file << "  (" << e.info << ")\n";
        any_invalid = true;
      }
    }
    std::cout << entries.size() << " entries\n";
    return any_invalid ? 1 : 0;
  }
  if (action == "clear") {
    long long removed = 0;
    for (const auto& e : entries) {
      if (!e.valid) {
        std::cout << "KEEP (unreadable, inspect manually) " << e.file << "  (" << e.info << ")\n";
        any_invalid = true;
        continue;
      }
      std::filesystem::remove(dir / e.file);
      ++removed;
    }
    std::cout << "removed " << removed << " entries\n";
    return any_invalid ? 1 : 0;
  }
  throw UsageError("unknown cache action '" + action + "' (list|validate|clear)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alcove: exact affine Weyl alcove geometry and Demazure characters"};
  app.footer(kNodeOrderHelp);
  app.require_subcommand(1);

  std::string algebra, weight, point, input, parts, remainder, cache_dir, labels_csv;
  std::string cache_action = "list";
  long long level = 1;
  int node = 1;
  long long samples = 25;
  std::uint64_t seed = 20160819;
  bool as_json = false, verify_only = false, classical_only = false;

  auto add_common = [&](CLI::App* sub, bool with_weight) {
    sub->add_option("-a,--algebra", algebra, "affine label, e.g. E6^1, A4^2, D4^3")->required();
    if (with_weight)
      sub->add_option("-w,--weight", weight, "fundamental-weight coordinates, e.g. 1,0,2");
    sub->add_flag("--json", as_json, "machine-readable output");
  };

  auto* cert = app.add_subcommand("certificate", "compute and verify a Steinberg certificate");
  add_common(cert, true);
  cert->add_option("-l,--level", level, "level (positive integer)");
  cert->add_flag("--verify-only", verify_only, "verify a serialized certificate instead");
  cert->add_option("--input", input, "certificate JSON file for --verify-only");

  auto* loc = app.add_subcommand("locate", "fold a rational point into the fundamental alcove");
  loc->add_option("-a,--algebra", algebra)->required();
  loc->add_option("-p,--point", point, "rational coordinates, e.g. 5/2 or 1/3,7/2")->required();
  loc->add_flag("--json", as_json);

  auto* dec = app.add_subcommand("decompose", "canonical level-l decomposition (simply-laced)");
  add_common(dec, true);
  dec->add_option("-l,--level", level);

  auto* ch = app.add_subcommand("character", "graded Demazure character and dimension");
  add_common(ch, true);
  ch->add_option("-l,--level", level);
  ch->add_flag("--classical", classical_only, "print the classical character only");
  ch->add_option("--cache-dir", cache_dir, "persistent character cache directory");

  auto* vf = app.add_subcommand("verify-fusion", "check the fusion decomposition at character level");
  add_common(vf, true);
  vf->add_option("-l,--level", level);
  vf->add_option("--parts", parts, "explicit parts 'c1,c2;c1,c2;...' (default: canonical)");
  vf->add_option("--remainder", remainder, "explicit remainder coordinates");
  vf->add_option("--cache-dir", cache_dir);

  auto* vq = app.add_subcommand("verify-qsystem", "check the Q-system short exact sequence");
  add_common(vq, true);
  vq->add_option("-l,--level", level);
  vq->add_option("-i,--node", node, "miniscule node index")->required();
  vq->add_option("--cache-dir", cache_dir);

  auto* st = app.add_subcommand("selftest", "run the randomized invariant sweeps");
  st->add_option("--labels", labels_csv, "comma-separated labels (default: the full sweep set)");
  st->add_option("--samples", samples, "cases per label per suite");
  st->add_option("--seed", seed, "base RNG seed");

  auto* ca = app.add_subcommand("cache", "list/validate/clear the character cache");
  ca->add_option("action", cache_action, "list | validate | clear");
  ca->add_option("--cache-dir", cache_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cert->parsed()) return run_certificate(algebra, level, weight, as_json, verify_only, input);
    if (loc->parsed()) return run_locate(algebra, point, as_json);
    if (dec->parsed()) return run_decompose(algebra, level, weight, as_json);
    if (ch->parsed()) return run_character(algebra, level, weight, as_json, classical_only, cache_dir);
    if (vf->parsed())
      return run_verify_fusion(algebra, level, weight, parts, remainder, as_json, cache_dir);
    if (vq->parsed()) return run_verify_qsystem(algebra, level, weight, node, as_json, cache_dir);
    if (st->parsed()) return run_selftest(labels_csv, samples, seed);
    if (ca->parsed()) return run_cache(cache_action, cache_dir);
  } catch (const alcove::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
