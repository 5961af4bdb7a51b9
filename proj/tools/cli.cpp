#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "fastdiag/fastgroups.hpp"
#include "fastdiag/moves.hpp"
#include "fastdiag/oracle.hpp"
#include "fastdiag/plhomeo.hpp"
#include "fastdiag/strand.hpp"

namespace fastdiag::cli {

  namespace {

    using Json = nlohmann::ordered_json;

    struct Options {
      std::string format = "text";

      std::uint32_t n           = 0;
      bool          irreducible = false;
      bool          pairs       = false;

      std::string spec;
      std::string word;
      bool        dump_diagram = false;
      bool        dot          = false;

      std::uint64_t seed    = 1;
      std::size_t   trials  = 500;
      std::size_t   max_len = 10;

      std::string script;

      bool json() const {
        return format == "json";
      }
    };

    std::string hex(std::uint64_t x) {
      char buf[17];
      std::snprintf(buf, sizeof buf, "%016llx",
                    static_cast<unsigned long long>(x));
      return buf;
    }

    void indent(std::ostream& out, std::string const& text,
                std::string const& pad) {
      std::istringstream in(text);
      for (std::string line; std::getline(in, line);) {
        out << pad << line << '\n';
      }
    }

    Json presentation_json(Presentation const& p) {
      Json rels = Json::array();
      for (auto const& r : p.relations()) {
        rels.push_back({{"lhs", p.format_word(r.lhs)},
                        {"rhs", p.format_word(r.rhs)}});
      }
      Json j{{"gens", p.alphabet()}, {"relations", rels}};
      j["base"] = p.base() ? Json(p.format_word(*p.base())) : Json(nullptr);
      return j;
    }

    int cmd_enumerate(Options const& o, std::ostream& out) {
      auto all = enumerate(o.n);
      if (o.irreducible) {
        std::erase_if(all, [](auto const& dd) { return !is_irreducible(dd); });
      }
      if (o.json()) {
        Json list = Json::array();
        for (auto const& dd : all) {
          list.push_back(format(dd));
        }
        out << Json{{"n", o.n},
                    {"irreducible", o.irreducible},
                    {"diagrams", list},
                    {"count", all.size()}}
                   .dump(2)
            << '\n';
        return exit_ok;
      }
      for (auto const& dd : all) {
        out << format(dd) << '\n';
      }
      out << "count=" << all.size() << '\n';
      return exit_ok;
    }

    int cmd_presentation(Options const& o, std::ostream& out) {
      auto const fg = compile(resolve_diagram(o.spec));
      if (o.json()) {
        auto j = presentation_json(fg.presentation());
        j["diagram"] = format(fg.diagram());
        out << j.dump(2) << '\n';
      } else {
        out << serialize(fg.presentation());
      }
      return exit_ok;
    }

    int cmd_word(Options const& o, std::ostream& out) {
      auto const fg  = compile(resolve_diagram(o.spec));
      auto const w   = parse_group_word(o.word, fg.bump_count());
      auto const d   = delta(fg, w);
      auto const key = hex(key_digest(canonical_key(d)));
      bool const triv = is_trivial(d);
      if (o.json()) {
        Json j{{"result", triv ? "trivial" : "non-trivial"},
               {"vertices", d.vertex_count()},
               {"key", key}};
        if (o.dump_diagram) {
          j["dump"] = dump(d);
        }
        if (o.dot) {
          j["dot"] = to_dot(d);
        }
        out << j.dump(2) << '\n';
        return exit_ok;
      }
      out << "result=" << (triv ? "trivial" : "non-trivial") << '\n'
          << "vertices=" << d.vertex_count() << '\n'
          << "key=" << key << '\n';
      if (o.dump_diagram) {
        out << dump(d);
      }
      if (o.dot) {
        out << to_dot(d);
      }
      return exit_ok;
    }

    int cmd_oracle(Options const& o, std::ostream& out) {
      auto const preset = resolve_diagram(o.spec);
      auto const fg     = compile(preset);
      auto const r      = realize(preset.dd);
      WordSampler sampler(o.seed);
      std::size_t identity_agree = 0, labels_agree = 0;
      Json        disagreements = Json::array();
      std::ostringstream text;
      for (std::size_t t = 0; t < o.trials; ++t) {
        auto const w   = sampler.word(fg.bump_count(), o.max_len);
        auto const res = run_trial(fg, r, w);
        identity_agree += res.trivial == res.identity;
        labels_agree += res.labels_agree;
        if (!res.agree()) {
          disagreements.push_back({{"trial", t},
                                   {"word", format(w)},
                                   {"trivial", res.trivial},
                                   {"identity", res.identity},
                                   {"labels_agree", res.labels_agree}});
          text << "disagreement trial=" << t << " word=\"" << format(w)
               << "\" trivial=" << res.trivial << " identity=" << res.identity
               << " labels_agree=" << res.labels_agree << '\n';
        }
      }
      bool const pass = disagreements.empty();
      if (o.json()) {
        out << Json{{"spec", preset.name},
                    {"trials", o.trials},
                    {"seed", o.seed},
                    {"max_len", o.max_len},
                    {"identity_agree", identity_agree},
                    {"path_labels_agree", labels_agree},
                    {"disagreements", disagreements},
                    {"status", pass ? "pass" : "fail"}}
                   .dump(2)
            << '\n';
      } else {
        out << "spec=" << preset.name << '\n'
            << "trials=" << o.trials << " seed=" << o.seed
            << " max_len=" << o.max_len << '\n'
            << text.str() << "identity_agree=" << identity_agree << '/'
            << o.trials << '\n'
            << "path_labels_agree=" << labels_agree << '/' << o.trials << '\n'
            << "status=" << (pass ? "pass" : "fail") << '\n';
      }
      return pass ? exit_ok : exit_disagree;
    }

    int cmd_verify(Options const& o, std::ostream& out) {
      auto const script = load_script(o.script);
      auto const report = verify_script(script);
      if (o.json()) {
        Json steps = Json::array();
        for (auto const& s : report.steps) {
          Json js{{"line", s.line}, {"step", s.step}, {"ok", s.ok}};
          if (!report.ok) {
            js["violation"] = s.violation;
            js["snapshot"]  = presentation_json(s.snapshot);
          }
          steps.push_back(std::move(js));
        }
        Json j{{"script", o.script},
               {"steps", steps},
               {"matches_expect", report.matches_expect},
               {"final", presentation_json(report.final_presentation)},
               {"status", report.ok ? "pass" : "fail"}};
        if (!report.ok) {
          j["failure"] = report.failure;
        }
        out << j.dump(2) << '\n';
        return report.ok ? exit_ok : exit_disagree;
      }
      out << "steps=" << report.steps.size() << '/' << script.steps.size()
          << '\n';
      if (!report.ok) {
        for (std::size_t k = 0; k < report.steps.size(); ++k) {
          auto const& s = report.steps[k];
          out << "step " << k + 1 << " line " << s.line << ' '
              << (s.ok ? "ok" : "FAILED") << ": " << s.step << '\n';
          if (!s.ok) {
            out << "  violation: " << s.violation << '\n';
          }
          indent(out, serialize(s.snapshot), "    ");
        }
        if (report.steps.size() == script.steps.size()) {
          out << "expected:\n";
          indent(out, serialize(script.expect), "    ");
        }
        out << "failure=" << report.failure << '\n';
      }
      out << "final:\n";
      indent(out, serialize(report.final_presentation), "    ");
      out << "status=" << (report.ok ? "pass" : "fail") << '\n';
      return report.ok ? exit_ok : exit_disagree;
    }

    int cmd_orbits(Options const& o, std::ostream& out) {
      if (o.n < 1 || o.n > 4) {
        throw std::out_of_range("orbits: bump count must be in 1..4");
      }
      auto all = enumerate(o.n);
      std::erase_if(all, [](auto const& dd) { return !is_irreducible(dd); });
      MoveSet moves;
      moves.pairs       = o.pairs;
      auto const report = orbit_partition(all, moves);
      if (o.json()) {
        Json classes = Json::array();
        for (auto const& c : report.classes) {
          Json members = Json::array();
          for (auto k : c) {
            members.push_back(format(all[k]));
          }
          classes.push_back({{"size", c.size()},
                             {"representative", format(all[c.front()])},
                             {"members", members}});
        }
        out << Json{{"n", o.n},
                    {"diagrams", all.size()},
                    {"moves", report.move_set},
                    {"moves_tried", report.moves_tried},
                    {"moves_in_set", report.moves_in_set},
                    {"classes", classes}}
                   .dump(2)
            << '\n';
        return exit_ok;
      }
      out << "diagrams=" << all.size() << '\n'
          << "moves=" << report.move_set << '\n'
          << "moves_tried=" << report.moves_tried << '\n'
          << "moves_in_set=" << report.moves_in_set << '\n'
          << "classes=" << report.classes.size() << '\n';
      for (std::size_t k = 0; k < report.classes.size(); ++k) {
        auto const& c = report.classes[k];
        out << "class " << k + 1 << " size=" << c.size()
            << " representative=" << format(all[c.front()]) << '\n';
      }
      return exit_ok;
    }

    int cmd_realize(Options const& o, std::ostream& out) {
      auto const r = realize(resolve_diagram(o.spec).dd);
      if (o.json()) {
        Json bumps = Json::array();
        for (std::uint32_t b = 0; b < r.bumps.size(); ++b) {
          Json pts = Json::array();
          for (auto const& [x, y] : r.bumps[b].breakpoints()) {
            pts.push_back({to_string(x), to_string(y)});
          }
          bumps.push_back({{"bump", bump_name(b)},
                           {"breakpoints", pts},
                           {"marker", to_string(r.markers[b])}});
        }
        out << Json{{"diagram", format(r.dd)}, {"bumps", bumps}}.dump(2)
            << '\n';
      } else {
        out << dump(r);
      }
      return exit_ok;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err) {
    Options  o;
    CLI::App app{"Fast groups of bumps and their diagram groups", "fastdiag"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));

    auto* en = app.add_subcommand("enumerate", "List dynamical diagrams");
    en->add_option("n", o.n, "Number of bumps")->required();
    en->add_flag("--irreducible", o.irreducible, "Only irreducible diagrams");

    auto* pr = app.add_subcommand("presentation",
                                  "Print the compiled semigroup presentation");
    pr->add_option("spec", o.spec, "Preset name, \"dd n: s-d ...\" or preset file")
        ->required();

    auto* wo = app.add_subcommand("word", "Reduce the diagram of a bump word");
    wo->add_option("spec", o.spec, "Preset name, \"dd n: s-d ...\" or preset file")
        ->required();
    wo->add_option("word", o.word, "Bumps a, b, ...; a' is the inverse of a");
    wo->add_flag("--dump", o.dump_diagram, "Print the reduced diagram");
    wo->add_flag("--dot", o.dot, "Print the reduced diagram as Graphviz");

    auto* orc = app.add_subcommand(
        "oracle", "Compare strand diagrams with the PL realization");
    orc->add_option("spec", o.spec, "Preset name, \"dd n: s-d ...\" or preset file")
        ->required();
    orc->add_option("--trials", o.trials, "Number of random words")
        ->check(CLI::PositiveNumber);
    orc->add_option("--seed", o.seed, "Seed for std::mt19937_64");
    orc->add_option("--max-len", o.max_len, "Maximum word length");

    auto* ve = app.add_subcommand("verify", "Check a derivation script");
    ve->add_option("script", o.script, "Script file")->required();

    auto* ob = app.add_subcommand(
        "orbits", "Conjugation classes of irreducible diagrams");
    ob->add_option("n", o.n, "Number of bumps (at most 4)")->required();
    ob->add_flag("--pairs", o.pairs, "Also conjugate by products of two bumps");

    auto* re = app.add_subcommand("realize", "Dump the PL realization");
    re->add_option("spec", o.spec, "Preset name, \"dd n: s-d ...\" or preset file")
        ->required();

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::ParseError const& e) {
      return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }

    try {
      if (en->parsed()) {
        return cmd_enumerate(o, out);
      }
      if (pr->parsed()) {
        return cmd_presentation(o, out);
      }
      if (wo->parsed()) {
        return cmd_word(o, out);
      }
      if (orc->parsed()) {
        return cmd_oracle(o, out);
      }
      if (ve->parsed()) {
        return cmd_verify(o, out);
      }
      if (ob->parsed()) {
        return cmd_orbits(o, out);
      }
      if (re->parsed()) {
        return cmd_realize(o, out);
      }
    } catch (ParseError const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (DiagramFormatError const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    } catch (std::out_of_range const& e) {
      err << "error: " << e.what() << '\n';
      return exit_usage;
    }
    return exit_usage;
  }

}  // namespace fastdiag::cli
