// dsmooth: command-line front end for the verification library.
//
// Exit status: 0 when no check fails, 2 when a check fails or an
// obstruction is found, 1 on usage, input or parameter-constraint errors.

#include "dsmooth/dsmooth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace dsmooth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitFail = 2;

struct Output {
  std::string format = "text";
  bool timings = false;
  bool json() const { return format == "json"; }
};

/// Input problems that should end the run with exit status 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Document parse_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(path + ":" + e.what());
  }
}

ParamScalar scalar_flag(const std::string& name, const std::string& text) {
  try {
    return parse_scalar(text);
  } catch (const ParseError& e) {
    throw InputError("--" + name + " '" + text + "': " + e.reason);
  }
}

BaseScalar constant_flag(const std::string& name, const std::string& text) {
  ParamScalar s = scalar_flag(name, text);
  if (!s.is_constant()) throw InputError("--" + name + " must be a number, got '" + text + "'");
  return s.constant_value();
}

Json envelope(const std::string& command) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = "dsmooth";
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

void print_report(std::ostream& os, const CheckReport& r, bool timings) {
  const char* tag = r.status == Status::pass ? "PASS" : (r.status == Status::fail ? "FAIL" : "N/A ");
  os << "  " << tag << "  " << r.id << ": " << r.summary;
  if (timings) os << " (" << r.seconds << " s)";
  os << "\n";
  if (r.status == Status::not_applicable) os << "        reason: " << r.reason << "\n";
  if (r.witness) {
    os << "        witness: " << r.witness->description << "\n";
    if (!r.witness->relation.empty()) os << "        relation: " << r.witness->relation << "\n";
    if (!r.witness->element.empty()) os << "        element: " << r.witness->element << "\n";
  }
  if (!r.assumptions.empty()) {
    os << "        assuming:";
    for (const auto& a : r.assumptions) os << " " << a << ";";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "        note: " << n << "\n";
}

void print_reports(std::ostream& os, const std::vector<CheckReport>& reports, Verdict v,
                   const std::vector<std::string>& notes, bool timings) {
  for (const auto& n : notes) os << "  note: " << n << "\n";
  for (const auto& r : reports) print_report(os, r, timings);
  os << "verdict: " << to_string(v) << "\n";
}

int status_of(const std::vector<CheckReport>& reports, Verdict v) {
  if (v == Verdict::obstruction) return kExitFail;
  for (const auto& r : reports) {
    if (r.status == Status::fail) return kExitFail;
  }
  return kExitOk;
}

int emit_battery(const std::string& command, const BatteryResult& b, const Output& out, Json degrees) {
  if (out.json()) {
    Json j = envelope(command);
    j["input"] = b.input;
    j["degrees"] = std::move(degrees);
    j["result"] = to_json(b, out.timings);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << command << " " << b.input.dump() << "\n";
    print_reports(std::cout, b.reports, b.verdict, b.notes, out.timings);
  }
  if (b.constraint_violated) {
    std::cerr << "error: the parameters violate the Sklyanin condition\n";
    return kExitInput;
  }
  return status_of(b.reports, b.verdict);
}

// --- subcommands -----------------------------------------------------------

struct Check3dArgs {
  std::string p, q, r;
  bool symbolic = false;
  std::size_t max_degree = 4;
  std::size_t growth_degree = 6;
};

int run_check3d(const Check3dArgs& a, const Output& out) {
  Check3dOptions opt;
  opt.calc_degree = a.max_degree;
  opt.growth_degree = a.growth_degree;
  opt.symbolic_growth_degree = std::min<std::size_t>(a.growth_degree, 5);
  const bool any = !a.p.empty() || !a.q.empty() || !a.r.empty();
  if (a.symbolic == any) throw InputError("check3d: give either --symbolic or all of --p --q --r");
  std::optional<std::array<BaseScalar, 3>> params;
  if (!a.symbolic) {
    if (a.p.empty() || a.q.empty() || a.r.empty()) throw InputError("check3d: --p, --q and --r are all required");
    params = std::array{constant_flag("p", a.p), constant_flag("q", a.q), constant_flag("r", a.r)};
    if (params->at(0).is_zero() && params->at(1).is_zero() && params->at(2).is_zero()) {
      throw InputError("check3d: (p, q, r) must not all be zero");
    }
  }
  BatteryResult b = check3d(params, opt);
  Json deg;
  deg["calculus"] = opt.calc_degree;
  deg["growth"] = a.symbolic ? opt.symbolic_growth_degree : opt.growth_degree;
  return emit_battery("check3d", b, out, deg);
}

struct Check4dArgs {
  std::string alpha, beta, gamma;
  bool symbolic = false;
  std::size_t max_degree = 4;
};

int run_check4d(const Check4dArgs& a, const Output& out) {
  const bool any = !a.alpha.empty() || !a.beta.empty() || !a.gamma.empty();
  if (a.symbolic == any) throw InputError("check4d: give either --symbolic or all of --alpha --beta --gamma");
  std::optional<std::array<BaseScalar, 3>> params;
  if (!a.symbolic) {
    if (a.alpha.empty() || a.beta.empty() || a.gamma.empty()) {
      throw InputError("check4d: --alpha, --beta and --gamma are all required");
    }
    params = std::array{constant_flag("alpha", a.alpha), constant_flag("beta", a.beta), constant_flag("gamma", a.gamma)};
  }
  Check4dOptions opt;
  opt.hilbert_degree = a.max_degree;
  Json deg;
  deg["hilbert"] = opt.hilbert_degree;
  return emit_battery("check4d", check4d(params, opt), out, deg);
}

struct CertifyArgs {
  std::string file;
  std::size_t max_degree = 4;
  std::size_t growth_degree = 6;
};

int run_certify(const CertifyArgs& a, const Output& out) {
  Document doc = parse_file(a.file);
  Json results = Json::array();
  int status = kExitOk;
  bool violated = false;
  for (const auto& decl : doc.algebras) {
    CertifyOptions opt;
    opt.calc_degree = a.max_degree;
    opt.growth_degree = a.growth_degree;
    opt.symbolic_growth_degree = std::min<std::size_t>(a.growth_degree, 5);
    opt.table = decl.table;
    SmoothnessCertificate cert = certify(decl.presentation, opt);
    violated = violated || !decl.presentation.violated_constraints().empty();
    status = std::max(status, status_of(cert.reports, cert.verdict));
    if (out.json()) {
      results.push_back(to_json(cert, out.timings));
    } else {
      std::cout << "certify " << cert.presentation << "\n";
      print_reports(std::cout, cert.reports, cert.verdict, cert.notes, out.timings);
    }
  }
  if (out.json()) {
    Json j = envelope("certify");
    j["input"]["file"] = a.file;
    j["degrees"]["calculus"] = a.max_degree;
    j["degrees"]["growth"] = a.growth_degree;
    j["results"] = results;
    std::cout << j.dump(2) << "\n";
  }
  if (violated) {
    std::cerr << "error: a parameter constraint is violated\n";
    return kExitInput;
  }
  return status;
}

struct HilbertArgs {
  std::string file, builtin;
  std::string p, q, r, alpha, beta, gamma;
  std::size_t max_degree = 6;
};

int run_hilbert(const HilbertArgs& a, const Output& out) {
  if (a.file.empty() == a.builtin.empty()) throw InputError("hilbert: give either FILE or --builtin NAME");
  std::vector<Presentation> pres;
  Json input;
  if (!a.file.empty()) {
    for (const auto& d : parse_file(a.file).algebras) pres.push_back(d.presentation);
    input["file"] = a.file;
  } else {
    std::vector<std::optional<ParamScalar>> vals(3);
    const bool four = a.builtin == "sklyanin4";
    const std::string* flags[3] = {four ? &a.alpha : &a.p, four ? &a.beta : &a.q, four ? &a.gamma : &a.r};
    const char* names[3] = {four ? "alpha" : "p", four ? "beta" : "q", four ? "gamma" : "r"};
    for (int i = 0; i < 3; ++i) {
      if (!flags[i]->empty()) vals[i] = scalar_flag(names[i], *flags[i]);
    }
    try {
      pres.push_back(builtin(a.builtin, vals));
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    input["builtin"] = a.builtin;
    for (int i = 0; i < 3; ++i) {
      if (vals[i]) input[names[i]] = vals[i]->to_string();
    }
  }
  Json results = Json::array();
  bool violated = false;
  for (const auto& p : pres) {
    HilbertData h = p.is_symbolic() ? hilbert<ParamScalar>(p, a.max_degree) : hilbert<BaseScalar>(p, a.max_degree);
    violated = violated || !p.violated_constraints().empty();
    Json r;
    r["presentation"] = p.name;
    r["dims"] = h.dims;
    r["polynomial_ring_dims"] = h.polynomial_ring_dims;
    r["match"] = h.matches_polynomial_ring;
    if (a.max_degree >= 5) {
      GrowthReport g = growth_estimate(h);
      r["growth"] = to_string(g.classification);
      if (g.classification == GrowthClass::polynomial) r["gk_estimate"] = g.gk_estimate;
      if (g.classification == GrowthClass::exponential) r["min_ratio"] = g.min_ratio;
    }
    if (out.json()) {
      results.push_back(r);
    } else {
      std::cout << p.name << ": dims";
      for (auto d : h.dims) std::cout << " " << d;
      std::cout << "\n  match 1/(1-t)^" << h.generators << ": " << (h.matches_polynomial_ring ? "true" : "false") << "\n";
      if (r.contains("growth")) {
        std::cout << "  growth: " << r["growth"].get<std::string>();
        if (r.contains("gk_estimate")) std::cout << ", GK estimate " << r["gk_estimate"].get<int>();
        std::cout << "\n";
      }
    }
  }
  if (out.json()) {
    Json j = envelope("hilbert");
    j["input"] = input;
    j["degrees"]["hilbert"] = a.max_degree;
    j["results"] = results;
    std::cout << j.dump(2) << "\n";
  }
  if (violated) {
    std::cerr << "error: a parameter constraint is violated\n";
    return kExitInput;
  }
  return kExitOk;
}

struct NormalFormArgs {
  std::string file, expr;
};

int run_normal_form(const NormalFormArgs& a, const Output& out) {
  Document doc = parse_file(a.file);
  if (doc.algebras.size() != 1) throw InputError("normal-form: the file must contain exactly one algebra");
  const Presentation& p = doc.algebras[0].presentation;
  Element<ParamScalar> e;
  try {
    e = parse_expression(a.expr, p);
  } catch (const ParseError& err) {
    throw InputError("--expr:" + std::string(err.what()));
  }
  const std::size_t degree = std::max<std::size_t>(e.max_degree(), 2);
  std::string nf;
  if (p.is_symbolic() || !std::all_of(e.terms().begin(), e.terms().end(),
                                      [](const auto& t) { return t.second.is_constant(); })) {
    auto basis = GradedBasis<ParamScalar>::from(p, degree);
    nf = basis.normal_form(e).to_string(p.generators);
  } else {
    auto basis = GradedBasis<BaseScalar>::from(p, degree);
    nf = basis.normal_form(convert_element<BaseScalar>(e)).to_string(p.generators);
  }
  if (out.json()) {
    Json j = envelope("normal-form");
    j["input"]["file"] = a.file;
    j["input"]["expr"] = a.expr;
    j["degrees"]["truncation"] = degree;
    j["normal_form"] = nf;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << nf << "\n";
  }
  return kExitOk;
}

struct IsoArgs {
  std::string source, target, map;
  bool search = false;
  std::size_t threads = 0;
};

Presentation load_presentation(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    Document d = parse_file(spec);
    if (d.algebras.size() != 1) throw InputError("'" + spec + "' must contain exactly one algebra");
    return d.algebras[0].presentation;
  }
  try {
    return builtin_from_spec(spec);
  } catch (const ParseError& e) {
    throw InputError("'" + spec + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("'") + spec + "' is neither a file nor a built-in: " + e.what());
  }
}

GradedMap parse_map(const std::string& text, const Presentation& s, const Presentation& t) {
  const std::size_t n = s.num_generators();
  Matrix<ParamScalar> m(n, std::vector<ParamScalar>(n));
  std::vector<bool> seen(n, false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto arrow = item.find("->");
    if (arrow == std::string::npos) throw InputError("--map entry '" + item + "' lacks '->'");
    std::string lhs = item.substr(0, arrow);
    lhs.erase(0, lhs.find_first_not_of(" \t"));
    lhs.erase(lhs.find_last_not_of(" \t") + 1);
    auto it = std::find(s.generators.begin(), s.generators.end(), lhs);
    if (it == s.generators.end()) throw InputError("--map: '" + lhs + "' is not a source generator");
    auto i = static_cast<std::size_t>(it - s.generators.begin());
    Element<ParamScalar> img;
    try {
      img = parse_expression(item.substr(arrow + 2), t);
    } catch (const ParseError& e) {
      throw InputError("--map entry '" + item + "': " + e.reason);
    }
    if (!img.is_zero() && (!img.is_homogeneous() || img.max_degree() != 1)) {
      throw InputError("--map: image of '" + lhs + "' must be linear in the generators");
    }
    for (std::size_t k = 0; k < n; ++k) m[i][k] = img.coefficient(Word{static_cast<std::uint8_t>(k)});
    seen[i] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw InputError("--map: no image given for '" + s.generators[i] + "'");
  }
  return GradedMap(s, t, std::move(m));
}

int run_iso(const IsoArgs& a, const Output& out) {
  Presentation s = load_presentation(a.source);
  Presentation t = load_presentation(a.target);
  if (s.num_generators() != t.num_generators()) throw InputError("iso: source and target have different alphabets");
  Json j = envelope("iso");
  j["input"]["source"] = a.source;
  j["input"]["target"] = a.target;
  int status = kExitOk;
  std::ostringstream text;
  if (a.search) {
    SearchOptions opt;
    opt.threads = static_cast<unsigned>(a.threads);
    SearchResult res;
    try {
      res = search_isomorphism(s, t, opt);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    j["search"]["alphabet"] = Json::array();
    for (const auto& v : opt.alphabet) j["search"]["alphabet"].push_back(v.to_string());
    j["search"]["candidates"] = res.candidates;
    if (res.map) {
      j["search"]["status"] = "FOUND";
      j["search"]["index"] = *res.index;
      j["search"]["map"] = res.map->describe();
      text << "FOUND:";
      for (const auto& l : res.map->describe()) text << " " << l << ";";
      text << "\n";
    } else {
      j["search"]["status"] = "NOT-FOUND";
      text << "NOT-FOUND within the alphabet {0, +-1, +-w, +-w^2}\n";
      status = kExitFail;
    }
  } else {
    GradedMap m = a.map.empty() ? GradedMap::permutation(s, t, [&] {
      std::vector<std::size_t> id(s.num_generators());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      return id;
    }())
                                : parse_map(a.map, s, t);
    CheckReport rep = verify_morphism(m);
    j["result"] = to_json(rep, out.timings);
    print_report(text, rep, out.timings);
    if (!rep.passed()) status = kExitFail;
  }
  if (out.json()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text.str();
  }
  return status;
}

int run_parse(const std::string& file, const Output& out) {
  Document doc = parse_file(file);
  if (out.json()) {
    Json j = envelope("parse");
    j["input"]["file"] = file;
    Json algs = Json::array();
    for (const auto& d : doc.algebras) {
      const Presentation& p = d.presentation;
      Json a;
      a["name"] = p.name;
      a["base"] = to_string(p.base);
      a["parameters"] = p.parameters;
      a["generators"] = p.generators;
      Json rels = Json::array();
      for (const auto& r : p.relations) rels.push_back(r.text);
      a["relations"] = rels;
      Json cons = Json::array();
      for (const auto& c : p.constraints) cons.push_back(c.text);
      a["constraints"] = cons;
      if (d.table) a["calculus"] = d.table->describe(p.generators);
      algs.push_back(a);
    }
    j["algebras"] = algs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << serialize(doc);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of differential smoothness for quadratic algebras"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timings", out.timings, "Include per-check wall-clock times");

  Check3dArgs c3;
  auto* s3 = app.add_subcommand("check3d", "Run the three-dimensional Sklyanin battery");
  s3->add_option("--p", c3.p, "Parameter p");
  s3->add_option("--q", c3.q, "Parameter q");
  s3->add_option("--r", c3.r, "Parameter r");
  s3->add_flag("--symbolic", c3.symbolic, "Keep p, q, r symbolic");
  s3->add_option("--max-degree", c3.max_degree, "Truncation for the calculus checks")->check(CLI::Range(2, 8));
  s3->add_option("--growth-degree", c3.growth_degree, "Truncation for the growth estimate")->check(CLI::Range(5, 10));

  Check4dArgs c4;
  auto* s4 = app.add_subcommand("check4d", "Run the four-dimensional Sklyanin battery");
  s4->add_option("--alpha", c4.alpha, "Parameter alpha");
  s4->add_option("--beta", c4.beta, "Parameter beta");
  s4->add_option("--gamma", c4.gamma, "Parameter gamma");
  s4->add_flag("--symbolic", c4.symbolic, "Keep alpha, beta, gamma symbolic");
  s4->add_option("--max-degree", c4.max_degree, "Truncation for the Hilbert series")->check(CLI::Range(2, 6));

  CertifyArgs cc;
  auto* sc = app.add_subcommand("certify", "Certify every algebra in a .alg file");
  sc->add_option("file", cc.file, "Presentation file")->required();
  sc->add_option("--max-degree", cc.max_degree, "Truncation for the calculus checks")->check(CLI::Range(2, 8));
  sc->add_option("--growth-degree", cc.growth_degree, "Truncation for the growth estimate")->check(CLI::Range(5, 10));

  HilbertArgs ch;
  auto* sh = app.add_subcommand("hilbert", "Graded dimensions and growth");
  sh->add_option("file", ch.file, "Presentation file");
  sh->add_option("--builtin", ch.builtin, "Built-in presentation");
  for (auto [name, dst] : {std::pair{"--p", &ch.p}, {"--q", &ch.q}, {"--r", &ch.r}, {"--alpha", &ch.alpha},
                           {"--beta", &ch.beta}, {"--gamma", &ch.gamma}}) {
    sh->add_option(name, *dst, "Parameter value for the built-in");
  }
  sh->add_option("--max-degree", ch.max_degree, "Truncation degree")->check(CLI::Range(2, 12));

  NormalFormArgs cn;
  auto* sn = app.add_subcommand("normal-form", "Normal form of an element");
  sn->add_option("file", cn.file, "Presentation file")->required();
  sn->add_option("--expr", cn.expr, "Element to reduce")->required();

  IsoArgs ci;
  auto* si = app.add_subcommand("iso", "Verify or search for a graded isomorphism");
  si->add_option("--source", ci.source, "Source: .alg file or built-in such as sklyanin3(1,2,3)")->required();
  si->add_option("--target", ci.target, "Target: .alg file or built-in")->required();
  si->add_flag("--search", ci.search, "Search generator matrices over {0, +-1, +-w, +-w^2}");
  si->add_option("--map", ci.map, "Generator images, e.g. \"x -> x; y -> z; z -> y\"");
  si->add_option("--threads", ci.threads, "Search threads (0: all cores)");

  std::string parse_path;
  auto* sp = app.add_subcommand("parse", "Parse a .alg file and print it in canonical form");
  sp->add_option("file", parse_path, "Presentation file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*s3) return run_check3d(c3, out);
    if (*s4) return run_check4d(c4, out);
    if (*sc) return run_certify(cc, out);
    if (*sh) return run_hilbert(ch, out);
    if (*sn) return run_normal_form(cn, out);
    if (*si) return run_iso(ci, out);
    if (*sp) return run_parse(parse_path, out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
