#include "sheafcon/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "sheafcon/dlat.hpp"
#include "sheafcon/dot.hpp"
#include "sheafcon/errors.hpp"
#include "sheafcon/io.hpp"
#include "sheafcon/mv.hpp"
#include "sheafcon/perm.hpp"
#include "sheafcon/sheaf.hpp"
#include "sheafcon/suite.hpp"

namespace sheafcon {

  int exit_code(CommandResult::Status status) {
    switch (status) {
      case CommandResult::Status::ok:
        return 0;
      case CommandResult::Status::property_failed:
        return 1;
      case CommandResult::Status::invalid_input:
        return 2;
    }
    return 2;
  }

  namespace {

    using Status = CommandResult::Status;
    namespace fs = std::filesystem;

    // Structured data for --format json and plain lines for text.
    struct Report {
      Status status = Status::ok;
      Json data = Json::object();
      std::vector<std::string> lines;
      std::vector<std::string> artifacts;

      void line(std::string s) { lines.push_back(std::move(s)); }
      void fail(std::string witness) {
        status = Status::property_failed;
        data["witness"] = witness;
        lines.push_back("FAILED: " + witness);
      }
    };

    struct Options {
      std::string format = "text";
      std::uint64_t seed = default_seed;
      std::string file;
      std::string second;
      std::string output;
      std::vector<std::string> pairs;
      std::vector<std::string> targets;
      std::vector<std::string> numbers;
      std::vector<int> only;
      std::string kind;
    };

    fs::path dir_of(const std::string& file) { return fs::path(file).parent_path(); }

    AlgebraPtr read_algebra(const std::string& file) { return algebra_from_json(load_json(file)); }

    StalkAssignment read_assignment(const std::string& file) {
      return stalk_assignment_from_json(load_json(file), dir_of(file));
    }

    std::pair<std::string, std::string> split_pair(const std::string& s) {
      std::istringstream is(s);
      std::string a, b, extra;
      if (!(is >> a >> b) || (is >> extra)) {
        throw ParseError("expected a pair \"x y\", got \"" + s + "\"");
      }
      return {a, b};
    }

    void write_artifact(Report& r, const std::string& path, const std::string& content) {
      std::ofstream out(path);
      if (!out) {
        throw ParseError("cannot write " + path);
      }
      out << content;
      r.artifacts.push_back(path);
      r.line("wrote " + path);
    }

    std::string pair_name(const Algebra& a, std::pair<std::size_t, std::size_t> p) {
      return "(" + a.element_name(p.first) + "," + a.element_name(p.second) + ")";
    }

    Json stalks_json(const StalkAssignment& sa) {
      Json j = Json::object();
      for (std::size_t y = 0; y < sa.base().size(); ++y) {
        j[sa.base().name(y)] = congruence_to_json(sa.stalk(y));
      }
      return j;
    }

    void describe_stalks(Report& r, const SheafRep& f) {
      const auto& y = f.base();
      for (std::size_t p = 0; p < y.size(); ++p) {
        r.line("  " + y.name(p) + ": theta = " + f.assignment().stalk(p).to_string() + ", stalk of "
               + std::to_string(f.stalk(p).algebra->size()));
      }
      r.data["stalks"] = stalks_json(f.assignment());
    }

    // ---- alg ---------------------------------------------------------------

    void alg_validate(const Options& o, Report& r) {
      const auto a = read_algebra(o.file);
      std::string sig;
      Json jsig = Json::array();
      for (const auto& s : a->signature()) {
        sig += (sig.empty() ? "" : ", ") + s.name + "/" + std::to_string(s.arity);
        jsig.push_back({{"symbol", s.name}, {"arity", s.arity}});
      }
      r.data["name"] = a->name();
      r.data["size"] = a->size();
      r.data["signature"] = jsig;
      r.line("valid algebra " + a->name() + ": " + std::to_string(a->size()) + " elements; "
             + (sig.empty() ? "no operations" : sig));
    }

    void alg_con(const Options& o, Report& r) {
      const auto a = read_algebra(o.file);
      const auto con = congruence_lattice(a);
      r.data["algebra"] = a->name();
      r.data["count"] = con.size();
      Json list = Json::array();
      r.line(std::to_string(con.size()) + " congruences of " + a->name() + ":");
      for (const auto& c : con.members()) {
        list.push_back(congruence_to_json(c));
        r.line("  " + c.to_string());
      }
      r.data["congruences"] = list;
    }

    // ---- con ---------------------------------------------------------------

    std::vector<Congruence> principal_list(const AlgebraPtr& a, const std::vector<std::string>& ps) {
      std::vector<Congruence> out;
      for (const auto& p : ps) {
        auto [x, y] = split_pair(p);
        out.push_back(principal_congruence(a, x, y));
      }
      return out;
    }

    void con_commute(const Options& o, Report& r) {
      const auto a = read_algebra(o.file);
      if (o.pairs.size() != 2) {
        throw ParseError("con commute needs exactly two --pairs");
      }
      const auto t = principal_list(a, o.pairs);
      const auto c = commute(t[0], t[1]);
      r.data["theta1"] = congruence_to_json(t[0]);
      r.data["theta2"] = congruence_to_json(t[1]);
      r.data["commutes"] = c.commutes;
      r.line("theta1 = " + t[0].to_string());
      r.line("theta2 = " + t[1].to_string());
      if (c) {
        r.line("the congruences commute");
      } else {
        r.fail("theta1 o theta2 != theta2 o theta1; witness " + pair_name(*a, *c.witness));
        r.data["witness"] = {a->element_name(c.witness->first), a->element_name(c.witness->second)};
      }
    }

    void con_crt(const Options& o, Report& r) {
      const auto a = read_algebra(o.file);
      if (o.pairs.empty() || o.pairs.size() != o.targets.size()) {
        throw ParseError("con crt needs one --targets element per --pairs congruence");
      }
      const auto t = principal_list(a, o.pairs);
      std::vector<CrtConstraint> cs;
      for (std::size_t i = 0; i < t.size(); ++i) {
        cs.push_back({t[i], a->index(o.targets[i])});
        r.line("theta" + std::to_string(i + 1) + " = " + t[i].to_string() + ", target "
               + o.targets[i]);
      }
      try {
        const std::size_t x = crt_solve(a, cs);
        r.data["solution"] = a->element_name(x);
        r.line("solution: " + a->element_name(x));
      } catch (const PreconditionError& e) {
        r.fail(e.what());
      }
    }

    // ---- dl ----------------------------------------------------------------

    void dl_dual(const Options& o, Report& r) {
      const auto d = priestley_dual(DistLattice::make(read_algebra(o.file)));
      const auto& a = *d.lattice.algebra();
      Json points = Json::array();
      r.line("X has " + std::to_string(d.x.size()) + " points (prime ideals, ordered by inclusion):");
      for (std::size_t i = 0; i < d.x.size(); ++i) {
        Json ideal = Json::array();
        std::string s;
        for (std::size_t e : d.prime_ideals[i].members()) {
          ideal.push_back(a.element_name(e));
          s += (s.empty() ? "" : ",") + a.element_name(e);
        }
        const auto& j = a.element_name(d.join_irreducibles[i]);
        points.push_back({{"name", d.x.name(i)}, {"join_irreducible", j}, {"prime_ideal", ideal}});
        r.line("  " + d.x.name(i) + " = {" + s + "} (from " + j + ")");
      }
      r.data["points"] = points;
      r.data["X"] = poset_to_json(d.x);
      Json hats = Json::object();
      r.line("hats:");
      for (std::size_t e = 0; e < a.size(); ++e) {
        hats[a.element_name(e)] = set_names(d.x, d.hat[e]);
        r.line("  " + a.element_name(e) + " -> " + format_set(d.x, d.hat[e]));
      }
      r.data["hat"] = hats;
    }

    void dl_sp(const Options& o, Report& r) {
      const auto d = priestley_dual(DistLattice::make(read_algebra(o.file)));
      const auto rep = sp_check(d);
      r.data["points"] = rep.points;
      r.data["congruences"] = rep.congruences;
      r.line("|X| = " + std::to_string(rep.points) + ", |Con A| = " + std::to_string(rep.congruences));
      if (!rep) {
        r.fail(rep.failure);
        return;
      }
      Json pairs = Json::array();
      for (std::size_t bits = 0; bits < (std::size_t{1} << d.x.size()); ++bits) {
        const auto theta = cong_from_closed(d, ElemSet(bits));
        pairs.push_back({{"closed", set_names(d.x, ElemSet(bits))},
                         {"congruence", congruence_to_json(theta)}});
        r.line("  " + format_set(d.x, ElemSet(bits)) + " -> " + theta.to_string());
      }
      r.data["correspondence"] = pairs;
    }

    void dl_interp(const Options& o, Report& r) {
      const auto file = decomposition_from_json(load_json(o.file), dir_of(o.file));
      const auto& q = file.q;
      const auto res = is_interpolating_decomposition(q);
      r.data["interpolating"] = res.holds;
      if (!res) {
        r.fail("no interpolating point between " + q.x.name(res.witness->first) + " <= "
               + q.x.name(res.witness->second));
        r.data["witness"] = {q.x.name(res.witness->first), q.x.name(res.witness->second)};
        return;
      }
      r.line("q is an interpolating decomposition");
      if (file.dual) {
        const auto hom = psi_of_q(*file.dual, q);
        r.line("psi_q:");
        for (std::size_t y = 0; y < q.y.size(); ++y) {
          r.line("  " + q.y.name(y) + ": " + hom.assignment.stalk(y).to_string());
        }
        r.data["psi"] = stalks_json(hom.assignment);
      }
    }

    // ---- sheaf -------------------------------------------------------------

    void sheaf_build(const Options& o, Report& r) {
      const auto f = build_sheaf(read_assignment(o.file));
      const auto v = validate_frame_hom(f.assignment());
      const auto global = enumerate_sections(f, f.base().all());
      r.line("sheaf of " + f.algebra()->name() + " over " + format_set(f.base(), f.base().all()) + ":");
      describe_stalks(r, f);
      r.line("global sections: " + std::to_string(global.size()));
      r.line(v.ok() ? "frame homomorphism: yes" : "frame homomorphism: no (" + v.failure->message + ")");
      r.data["global_sections"] = global.size();
      r.data["frame_homomorphism"] = v.ok();
      if (!v.ok()) {
        r.data["validation_failure"] = v.failure->message;
      }
    }

    void sheaf_soft(const Options& o, Report& r) {
      const auto f = build_sheaf(read_assignment(o.file));
      const auto s = is_soft(f);
      r.data["soft"] = s.soft;
      if (s) {
        r.line("the sheaf is soft");
      } else {
        r.fail("section " + f.section_name(*s.unextendable) + " over "
               + format_set(f.base(), *s.up_set) + " has no global extension");
      }
    }

    void sheaf_roundtrip(const Options& o, Report& r) {
      const auto v = validate_frame_hom(read_assignment(o.file));
      if (!v.ok()) {
        r.fail("not a frame homomorphism: " + v.failure->message);
        return;
      }
      const auto rt = roundtrip_main(*v.hom);
      const auto gs = global_sections_check(*v.hom);
      r.data["roundtrip"] = rt.holds;
      r.data["global_sections"] = gs.eta.global_sections;
      if (!rt) {
        r.fail(rt.failure);
      } else if (!gs) {
        r.fail(gs.failure);
      } else {
        r.line("F_theta is soft and theta_F = theta; a |-> s_a is an isomorphism onto "
               + std::to_string(gs.eta.global_sections) + " global sections");
      }
    }

    void sheaf_direct_image(const Options& o, Report& r) {
      const auto f = build_sheaf(read_assignment(o.file));
      const auto map = monotone_map_from_json(load_json(o.second), f.base(), dir_of(o.second));
      try {
        const auto g = direct_image(f, map);
        r.line("direct image over " + format_set(g.base(), g.base().all()) + ":");
        describe_stalks(r, g);
        if (!o.output.empty()) {
          write_artifact(r, o.output, stalk_assignment_to_json(g.assignment()).dump(2) + "\n");
        }
      } catch (const SoftnessRequiredError& e) {
        r.fail(e.what());
      }
    }

    // ---- mv ----------------------------------------------------------------

    void emit_algebra(const Options& o, Report& r, const Algebra& a) {
      const auto doc = algebra_to_json(a);
      r.data["algebra"] = doc;
      if (o.output.empty()) {
        r.line(doc.dump(2));
      } else {
        write_artifact(r, o.output, doc.dump(2) + "\n");
      }
    }

    std::size_t parse_size(const std::string& s) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || s.empty() || s[0] == '-') {
        throw ParseError("expected a positive integer, got '" + s + "'");
      }
      return v;
    }

    void mv_chain(const Options& o, Report& r) {
      if (o.numbers.size() != 1) {
        throw ParseError("mv chain takes one size");
      }
      emit_algebra(o, r, *luk_chain(parse_size(o.numbers[0])).algebra());
    }

    void mv_product_cmd(const Options& o, Report& r) {
      std::vector<MVAlgebra> factors;
      for (const auto& n : o.numbers) {
        factors.push_back(luk_chain(parse_size(n)));
      }
      emit_algebra(o, r, *mv_product(factors).algebra());
    }

    void mv_spectrum_cmd(const Options& o, Report& r) {
      const auto a = MVAlgebra::make(read_algebra(o.file));
      const auto s = mv_spectrum(a);
      Json pts = Json::array();
      r.line(std::to_string(s.primes.size()) + " prime ideals of " + a.name() + ":");
      for (std::size_t i = 0; i < s.primes.size(); ++i) {
        std::vector<std::string> members;
        for (std::size_t e : s.primes[i].members()) {
          members.push_back(a.algebra()->element_name(e));
        }
        const auto& top = s.z.name(s.m[i]);
        pts.push_back({{"name", s.y.name(i)}, {"ideal", members}, {"m", top}});
        r.line("  " + s.y.name(i) + " = " + tuple_key(members) + ", m = " + top);
      }
      r.data["points"] = pts;
      r.data["Y"] = poset_to_json(s.y);
      r.data["root_system"] = s.is_root_system;
      r.line(std::string("root system: ") + (s.is_root_system ? "yes" : "no"));
      if (!s.is_root_system) {
        r.fail("the spectrum is not a root system");
      }
    }

    void mv_sheaf_cmd(const Options& o, Report& r) {
      const auto a = MVAlgebra::make(read_algebra(o.file));
      const auto s = mv_sheaf(a);
      r.line("sheaf over the prime spectrum:");
      describe_stalks(r, s.sheaf);
      Json spectral = r.data["stalks"];
      r.line("direct image over the maximal spectrum:");
      describe_stalks(r, s.direct);
      r.data["maximal_stalks"] = r.data["stalks"];
      r.data["stalks"] = spectral;
      const auto n = enumerate_sections(s.sheaf, s.sheaf.base().all()).size();
      r.data["global_sections"] = n;
      r.line("global sections: " + std::to_string(n) + " (|A| = " + std::to_string(a.size()) + ")");
    }

    // ---- suite and export --------------------------------------------------

    void suite_run(const Options& o, Report& r) {
      SuiteOptions so;
      so.seed = o.seed;
      so.only = o.only;
      Json rows = Json::array();
      bool all = true;
      for (const auto& c : run_suite(so)) {
        all = all && c.passed;
        rows.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed},
                        {"detail", c.detail}, {"seconds", c.seconds}});
        r.line(format_result(c));
      }
      r.data["seed"] = o.seed;
      r.data["criteria"] = rows;
      if (!all) {
        r.status = Status::property_failed;
      }
    }

    void export_dot(const Options& o, Report& r) {
      std::string dot;
      switch (parse_dot_kind(o.kind)) {
        case DotKind::poset:
          dot = poset_dot(poset_from_json(load_json(o.file)));
          break;
        case DotKind::conlat:
          dot = congruence_lattice_dot(congruence_lattice(read_algebra(o.file)));
          break;
        case DotKind::etale:
          dot = etale_dot(build_sheaf(read_assignment(o.file)));
          break;
        case DotKind::decomposition:
          dot = decomposition_dot(decomposition_from_json(load_json(o.file), dir_of(o.file)).q);
          break;
      }
      r.data["dot"] = dot;
      if (o.output.empty()) {
        r.line(dot.substr(0, dot.size() - 1));
      } else {
        write_artifact(r, o.output, dot);
      }
    }

    CommandResult finish(const Options& o, Report& r) {
      CommandResult out;
      out.status = r.status;
      out.artifacts = r.artifacts;
      if (o.format == "json") {
        Json doc = Json::object();
        doc["status"] = r.status == Status::ok ? "ok" : r.status == Status::property_failed
                                                            ? "property_failed"
                                                            : "invalid_input";
        for (auto& [k, v] : r.data.items()) {
          doc[k] = v;
        }
        if (!r.artifacts.empty()) {
          doc["artifacts"] = r.artifacts;
        }
        out.report = doc.dump(2) + "\n";
      } else {
        for (const auto& l : r.lines) {
          out.report += l + "\n";
        }
      }
      return out;
    }

    CommandResult invalid(const Options& o, const std::string& message) {
      CommandResult out;
      out.status = Status::invalid_input;
      if (o.format == "json") {
        out.report = Json{{"status", "invalid_input"}, {"error", message}}.dump(2) + "\n";
      } else {
        out.report = "error: " + message + "\n";
      }
      return out;
    }

  }  // namespace

  CommandResult run(const std::vector<std::string>& args) {
    Options o;
    CLI::App app{"Sheaf representations and commuting congruences of finite algebras", "sheafcon"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "Seed for the random algebra corpus");

    using Handler = void (*)(const Options&, Report&);
    std::vector<std::pair<CLI::App*, Handler>> leaves;
    auto group = [&](const std::string& name, const std::string& help) {
      auto* g = app.add_subcommand(name, help);
      g->require_subcommand(1);
      return g;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                    Handler h) {
      auto* c = parent->add_subcommand(name, help);
      leaves.emplace_back(c, h);
      return c;
    };
    auto file_arg = [&](CLI::App* c, const std::string& what) {
      c->add_option("file", o.file, what)->required()->check(CLI::ExistingFile);
    };

    auto* alg = group("alg", "Finite algebras");
    file_arg(leaf(alg, "validate", "Check an algebra file", alg_validate), "algebra file");
    file_arg(leaf(alg, "con", "List all congruences", alg_con), "algebra file");

    auto* con = group("con", "Congruence permutability");
    auto* commute_cmd = leaf(con, "commute", "Do two principal congruences commute", con_commute);
    file_arg(commute_cmd, "algebra file");
    commute_cmd->add_option("--pairs", o.pairs, "Generators \"x y\" of theta(x,y)")->required();
    auto* crt_cmd = leaf(con, "crt", "Solve a Chinese remainder system", con_crt);
    file_arg(crt_cmd, "algebra file");
    crt_cmd->add_option("--pairs", o.pairs, "Generators \"x y\" of theta(x,y)")->required();
    crt_cmd->add_option("--targets", o.targets, "One target element per congruence")->required();

    auto* dl = group("dl", "Distributive lattices");
    file_arg(leaf(dl, "dual", "Prime ideals and the dual poset", dl_dual), "lattice file");
    file_arg(leaf(dl, "sp", "Closed sets versus congruences", dl_sp), "lattice file");
    file_arg(leaf(dl, "interp", "Check an interpolating decomposition", dl_interp),
             "decomposition file");

    auto* sheaf = group("sheaf", "Sheaves from stalk assignments");
    file_arg(leaf(sheaf, "build", "Stalks and global sections", sheaf_build), "stalk file");
    file_arg(leaf(sheaf, "soft", "Softness check", sheaf_soft), "stalk file");
    file_arg(leaf(sheaf, "roundtrip", "Frame homomorphism round trip", sheaf_roundtrip),
             "stalk file");
    auto* di = leaf(sheaf, "direct-image", "Direct image along a monotone map", sheaf_direct_image);
    file_arg(di, "stalk file");
    di->add_option("map", o.second, "monotone map file")->required()->check(CLI::ExistingFile);
    di->add_option("-o,--output", o.output, "Write the image as a stalk file");

    auto* mv = group("mv", "MV-algebras");
    auto* chain = leaf(mv, "chain", "Lukasiewicz chain L_n", mv_chain);
    chain->add_option("n", o.numbers, "n >= 1")->required();
    chain->add_option("-o,--output", o.output, "Write the algebra file here");
    auto* prod = leaf(mv, "product", "Product of Lukasiewicz chains", mv_product_cmd);
    prod->add_option("n", o.numbers, "chain parameters");
    prod->add_option("-o,--output", o.output, "Write the algebra file here");
    file_arg(leaf(mv, "spectrum", "Prime ideal spectrum", mv_spectrum_cmd), "MV-algebra file");
    file_arg(leaf(mv, "sheaf", "Sheaf over the spectrum and its direct image", mv_sheaf_cmd),
             "MV-algebra file");

    auto* suite = group("suite", "Acceptance suite");
    leaf(suite, "run", "Run the acceptance criteria", suite_run)
        ->add_option("--only", o.only, "Criterion numbers")
        ->delimiter(',')
        ->check(CLI::Range(1, 10));

    auto* exp = group("export", "Diagram export");
    auto* dot = leaf(exp, "dot", "Write a DOT diagram", export_dot);
    dot->add_option("kind", o.kind, "poset, conlat, etale or decomposition")->required();
    file_arg(dot, "input file");
    dot->add_option("-o,--output", o.output, "Output path");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      const CLI::App* shown = &app;
      for (auto* c = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); c;
           c = c->get_subcommands().empty() ? nullptr : c->get_subcommands().front()) {
        shown = c;
      }
      return CommandResult{Status::ok, shown->help(), {}};
    } catch (const CLI::ParseError& e) {
      return invalid(o, e.what());
    }

    Report r;
    try {
      for (const auto& [cmd, handler] : leaves) {
        if (cmd->parsed()) {
          handler(o, r);
          return finish(o, r);
        }
      }
      return invalid(o, "no command given");
    } catch (const Error& e) {
      return invalid(o, std::string(e.kind()) + ": " + e.what());
    }
  }

}  // namespace sheafcon
