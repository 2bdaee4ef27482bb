#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <sgq/cocycle.hpp>
#include <sgq/coloring.hpp>
#include <sgq/fixtures.hpp>
#include <sgq/moves.hpp>
#include <sgq/presentation.hpp>
#include <sgq/walks.hpp>

using namespace sgq;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(errc::bad_argument, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --diagram accepts a file path or a built-in fixture name
Diagram load_diagram(const std::string& spec) {
  std::ifstream probe(spec);
  if (probe.good())
    return Diagram::parse(read_file(spec));
  return fixture(spec);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::vector<int>> parse_table_file(const std::string& text) {
  // nested arrays or whitespace rows; entries 1-based
  std::vector<std::vector<int>> rows;
  std::vector<int> cur;
  bool bracketed = text.find('[') != std::string::npos;
  if (bracketed) {
    int depth = 0;
    std::string num;
    auto flushnum = [&] {
      if (!num.empty()) {
        cur.push_back(std::stoi(num) - 1);
        num.clear();
      }
    };
    for (char c : text) {
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        num.push_back(c);
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        flushnum();
        if (depth == 2 && !cur.empty()) {
          rows.push_back(cur);
          cur.clear();
        }
        --depth;
      } else {
        flushnum();
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos)
        line = line.substr(0, hash);
      std::istringstream ls(line);
      std::vector<int> row;
      int v;
      while (ls >> v)
        row.push_back(v - 1);
      if (!row.empty())
        rows.push_back(row);
    }
  }
  return rows;
}

FiniteGroup parse_group_spec(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "sym" && parts.size() == 2)
    return symmetric_group(std::stoi(parts[1]));
  if (parts[0] == "cyc" && parts.size() == 2)
    return cyclic_group(std::stoi(parts[1]));
  if (parts[0] == "table" && parts.size() == 2) {
    auto table = parse_table_file(read_file(parts[1]));
    std::vector<std::string> names;
    for (size_t i = 0; i < table.size(); ++i)
      names.push_back(std::to_string(i + 1)); // 1-based like the file
    return group_from_table(std::move(table), std::move(names));
  }
  fail(errc::bad_argument, "unknown group spec: " + spec +
                               " (expected sym:<n>, cyc:<n> or table:<path>)");
}

FiniteQuandle parse_quandle_spec(const std::string& spec) {
  auto parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "paper5")
    return paper5_quandle();
  if (kind == "dihedral" && parts.size() == 2)
    return dihedral_quandle(std::stoi(parts[1]));
  if (kind == "trivial" && parts.size() == 2)
    return trivial_quandle(std::stoi(parts[1]));
  if (kind == "alexander" && parts.size() == 3)
    return alexander_quandle(std::stoi(parts[1]), parse_polynomial(parts[2]));
  if ((kind == "conj" || kind == "core") && parts.size() == 3) {
    FiniteGroup g = parse_group_spec(parts[1] + ":" + parts[2]);
    return kind == "conj" ? conjugation_quandle(g) : core_quandle(g);
  }
  if (kind == "table" && parts.size() == 2)
    return quandle_from_table(parse_table_file(read_file(parts[1])));
  fail(errc::bad_argument, "unknown quandle spec: " + spec);
}

TwoCocycle load_cocycle(const FiniteQuandle& q, const FiniteGroup& h,
                        const std::string& spec) {
  if (spec == "paper5-s3")
    return parse_cocycle(q, h, paper5_cocycle_text());
  return parse_cocycle(q, h, read_file(spec));
}

void print_quandle(const FiniteQuandle& q) {
  std::cout << "size " << q.size() << "\n";
  std::cout << "k_order " << q.k_order() << "\n";
  for (int a = 0; a < q.size(); ++a) {
    for (int b = 0; b < q.size(); ++b)
      std::cout << (b ? " " : "") << q.label(q.op(a, b));
    std::cout << "\n";
  }
}

void print_presentation_quandle(const Diagram& d) {
  auto p = fundamental_quandle_presentation(d);
  std::cout << "generators";
  for (const auto& g : p.generators)
    std::cout << " " << g;
  std::cout << "\n";
  for (const auto& r : p.crossing_relations)
    std::cout << "relation " << p.generators[r.under_in] << " "
              << (r.sign > 0 ? "*" : "*'") << " " << p.generators[r.over]
              << " = " << p.generators[r.under_out] << "\n";
  for (const auto& vr : p.vertex_relations)
    std::cout << "vertex " << d.nodes()[vr.vertex_node].id << ": x^{"
              << render_operator_word(vr.word, p.generators)
              << "} = x for all x\n";
  for (const auto& [gen, w] : normalized_vertex_relations(p))
    std::cout << "normalized " << p.generators[gen] << "^{"
              << render_operator_word(w, p.generators) << "} = "
              << p.generators[gen] << "\n";
}

void print_group_presentation(const GroupPresentation& gp) {
  std::cout << "generators";
  for (const auto& g : gp.generators)
    std::cout << " " << g;
  std::cout << "\n";
  for (const auto& r : gp.relators)
    std::cout << "relator " << render_group_word(r, gp.generators) << "\n";
}

void print_abelianization(const std::string& tag, const Abelianization& ab) {
  std::cout << tag << " free_rank " << ab.free_rank << " factors";
  if (ab.invariant_factors.empty())
    std::cout << " none";
  for (long long f : ab.invariant_factors)
    std::cout << " " << f;
  std::cout << "\n";
}

long long fuzz_colorings(const Diagram& d, const FiniteQuandle& q,
                         bool special, long long budget) {
  return special
             ? static_cast<long long>(
                   enumerate_special_colorings(d, q, budget).size())
             : static_cast<long long>(enumerate_colorings(d, q, budget).size());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"quandle invariants of spatial graphs and graph tangles"};
  app.require_subcommand(1);

  std::string diagram_spec, quandle_spec, group_spec, cocycle_spec;
  std::string from_label, to_label, invariant_spec, kind_name, out_path;
  int max_len = 0, site_index = 0, steps = 8;
  unsigned seed = 1;
  long long budget = kDefaultColoringBudget;
  int q_color = 0;
  bool special = false, normalized = false, stability = false;
  bool relaxed = false, use_paths = false, use_trails = false;
  bool all_pairs = false;
  int exact_len = -1, positive_edges = -1;

  auto* c_validate = app.add_subcommand("validate", "parse and check a diagram");
  c_validate->add_option("--diagram", diagram_spec)->required();

  auto* c_quandle = app.add_subcommand("quandle", "quandle utilities");
  auto* c_qcheck = c_quandle->add_subcommand("check", "validate a quandle spec");
  c_qcheck->add_option("--quandle", quandle_spec)->required();
  auto* c_qmake = c_quandle->add_subcommand("make", "print a quandle table");
  c_qmake->add_option("--quandle", quandle_spec)->required();

  auto* c_pres = app.add_subcommand("presentation", "diagram presentations");
  auto* c_pq = c_pres->add_subcommand("quandle", "fundamental quandle");
  auto* c_pg = c_pres->add_subcommand("group", "associated group");
  auto* c_pi = c_pres->add_subcommand("pi1", "Wirtinger presentation");
  auto* c_pa = c_pres->add_subcommand("abelianization", "abelianized ranks");
  for (auto* c : {c_pq, c_pg, c_pi, c_pa})
    c->add_option("--diagram", diagram_spec)->required();
  c_pg->add_flag("--normalized", normalized);

  auto* c_col = app.add_subcommand("colorings", "coloring invariants");
  auto* c_count = c_col->add_subcommand("count", "count colorings");
  auto* c_list = c_col->add_subcommand("list", "list colorings");
  for (auto* c : {c_count, c_list}) {
    c->add_option("--diagram", diagram_spec)->required();
    c->add_option("--quandle", quandle_spec)->required();
    c->add_flag("--special", special);
    c->add_option("--budget", budget);
  }

  auto* c_coc = app.add_subcommand("cocycle", "2-cocycle utilities");
  auto* c_ck = c_coc->add_subcommand("check", "verify a cocycle file");
  auto* c_cs = c_coc->add_subcommand("search", "enumerate cocycles");
  auto* c_cc = c_coc->add_subcommand("classify", "cohomology classes");
  for (auto* c : {c_ck, c_cs, c_cc}) {
    c->add_option("--quandle", quandle_spec)->required();
    c->add_option("--group", group_spec)->required();
    c->add_option("--budget", budget);
  }
  c_ck->add_option("--cocycle", cocycle_spec)->required();
  c_cs->add_flag("--stability", stability);
  c_cc->add_flag("--stability", stability);

  auto* c_psi = app.add_subcommand("psi", "walk invariant multisets");
  c_psi->add_option("--diagram", diagram_spec)->required();
  c_psi->add_option("--quandle", quandle_spec)->required();
  c_psi->add_option("--group", group_spec)->required();
  c_psi->add_option("--cocycle", cocycle_spec)->required();
  c_psi->add_option("--from", from_label);
  c_psi->add_option("--to", to_label);
  c_psi->add_option("--max-len", max_len);
  c_psi->add_option("--q", q_color)->default_val(0);
  c_psi->add_flag("--paths", use_paths);
  c_psi->add_flag("--trails", use_trails);
  c_psi->add_option("--exact-len", exact_len);
  c_psi->add_option("--positive-edges", positive_edges);
  c_psi->add_flag("--all-pairs", all_pairs);
  c_psi->add_flag("--relaxed", relaxed);
  c_psi->add_option("--budget", budget);

  auto* c_moves = app.add_subcommand("moves", "Reidemeister move engine");
  auto* c_sites = c_moves->add_subcommand("sites", "list applicable sites");
  auto* c_apply = c_moves->add_subcommand("apply", "apply one move");
  auto* c_fuzz = c_moves->add_subcommand("fuzz", "random move invariance");
  for (auto* c : {c_sites, c_apply, c_fuzz})
    c->add_option("--diagram", diagram_spec)->required();
  c_sites->add_option("--kind", kind_name)->required();
  c_apply->add_option("--kind", kind_name)->required();
  c_apply->add_option("--site", site_index)->required();
  c_apply->add_option("--out", out_path);
  c_fuzz->add_option("--invariant", invariant_spec)->required();
  c_fuzz->add_option("--seed", seed);
  c_fuzz->add_option("--steps", steps);
  c_fuzz->add_option("--budget", budget);
  c_fuzz->add_option("--group", group_spec);
  c_fuzz->add_option("--cocycle", cocycle_spec);
  c_fuzz->add_option("--from", from_label);
  c_fuzz->add_option("--to", to_label);
  c_fuzz->add_option("--max-len", max_len);

  auto* c_mirror = app.add_subcommand("mirror", "over/under exchange");
  c_mirror->add_option("--diagram", diagram_spec)->required();
  c_mirror->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1; // usage
  }

  try {
    if (c_validate->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      std::cout << "nodes " << d.nodes().size() << "\n"
                << "strands " << d.strands().size() << "\n"
                << "arcs " << d.arcs().size() << "\n"
                << "edges " << d.edges().size() << "\n"
                << "faces " << d.faces().size() << "\n"
                << "planar " << (d.is_planar() ? "true" : "false") << "\n"
                << "tangle " << (d.is_tangle() ? "true" : "false") << "\n";
      for (const auto& w : d.warnings())
        std::cout << "warning " << w << "\n";
    } else if (c_qcheck->parsed() || c_qmake->parsed()) {
      FiniteQuandle q = parse_quandle_spec(quandle_spec);
      if (c_qcheck->parsed())
        std::cout << "valid quandle, size " << q.size() << ", k_order "
                  << q.k_order() << "\n";
      else
        print_quandle(q);
    } else if (c_pq->parsed()) {
      print_presentation_quandle(load_diagram(diagram_spec));
    } else if (c_pg->parsed()) {
      auto p = fundamental_quandle_presentation(load_diagram(diagram_spec));
      print_group_presentation(associated_group_presentation(p, normalized));
    } else if (c_pi->parsed()) {
      print_group_presentation(wirtinger_presentation(load_diagram(diagram_spec)));
    } else if (c_pa->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      auto p = fundamental_quandle_presentation(d);
      print_abelianization("associated_group",
                           abelianization(associated_group_presentation(p)));
      if (!d.is_tangle())
        print_abelianization("wirtinger",
                             abelianization(wirtinger_presentation(d)));
    } else if (c_count->parsed() || c_list->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      FiniteQuandle q = parse_quandle_spec(quandle_spec);
      if (c_count->parsed()) {
        if (special) {
          auto cs = enumerate_special_colorings(d, q, budget);
          auto rep = special_compatibility(d, q);
          std::cout << "special " << cs.size() << "\n"
                    << "k_order " << rep.k_order << "\n"
                    << "balance_gcd " << rep.balance_gcd << "\n"
                    << "k_order_divides_balance "
                    << (rep.k_order_divides_balance ? "true" : "false")
                    << "\n";
        } else {
          auto counts = coloring_counts(d, q, budget);
          std::cout << "total " << counts.total << "\n"
                    << "trivial " << counts.trivial << "\n"
                    << "nontrivial " << counts.nontrivial << "\n"
                    << "special " << counts.special << "\n";
        }
      } else {
        auto cs = special ? enumerate_special_colorings(d, q, budget)
                          : enumerate_colorings(d, q, budget);
        auto p = fundamental_quandle_presentation(d);
        for (const auto& c : cs) {
          for (size_t a = 0; a < c.colors.size(); ++a)
            std::cout << (a ? " " : "") << p.generators[a] << "="
                      << q.label(c.colors[a]);
          std::cout << "\n";
        }
      }
    } else if (c_ck->parsed() || c_cs->parsed() || c_cc->parsed()) {
      FiniteQuandle q = parse_quandle_spec(quandle_spec);
      FiniteGroup h = parse_group_spec(group_spec);
      if (c_ck->parsed()) {
        TwoCocycle phi = load_cocycle(q, h, cocycle_spec);
        auto bad = phi.first_failure();
        std::cout << "cocycle " << (bad ? "false" : "true") << "\n";
        if (bad)
          std::cout << "failing_triple " << (*bad)[0] + 1 << " "
                    << (*bad)[1] + 1 << " " << (*bad)[2] + 1 << "\n";
        std::cout << "stability "
                  << (phi.satisfies_stability() ? "true" : "false") << "\n";
      } else {
        auto found = search_cocycles(q, h, stability, budget);
        if (c_cs->parsed()) {
          std::cout << "cocycles " << found.size() << "\n";
          for (size_t i = 0; i < found.size(); ++i) {
            std::cout << "# cocycle " << i << "\n" << found[i].serialize();
          }
        } else {
          auto cls = classify(found, budget);
          std::cout << "cocycles " << found.size() << "\n"
                    << "classes " << cls.classes.size() << "\n"
                    << "nontrivial_classes " << cls.nontrivial_count() << "\n";
          for (size_t g = 0; g < cls.classes.size(); ++g) {
            std::cout << "class " << g
                      << (static_cast<int>(g) == cls.trivial_class
                              ? " trivial"
                              : "")
                      << " size " << cls.classes[g].size()
                      << " representative " << cls.classes[g][0] << "\n";
          }
        }
      }
    } else if (c_psi->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      FiniteQuandle q = parse_quandle_spec(quandle_spec);
      FiniteGroup h = parse_group_spec(group_spec);
      TwoCocycle phi = load_cocycle(q, h, cocycle_spec);
      PsiOptions opt;
      opt.max_len = max_len;
      opt.relaxed = relaxed;
      opt.budget = budget;
      opt.filters.paths = use_paths;
      opt.filters.trails = use_trails;
      if (exact_len >= 0)
        opt.filters.exact_length = exact_len;
      if (positive_edges >= 0)
        opt.filters.positive_edges = positive_edges;
      if (all_pairs) {
        for (const auto& [pair, full] : psi_all_pairs(d, phi, opt))
          for (const auto& [qc, mset] : full)
            std::cout << "psi from=" << pair.first << " to=" << pair.second
                      << " q=" << q.label(qc) << " " << mset.render(h) << "\n";
      } else {
        if (from_label.empty() || to_label.empty())
          fail(errc::bad_argument, "psi needs --from and --to (or --all-pairs)");
        if (c_psi->count("--q")) {
          if (q_color < 1 || q_color > q.size())
            fail(errc::bad_argument, "--q must name a quandle element "
                                     "between 1 and " +
                                         std::to_string(q.size()));
          auto mset =
              psi_q(d, phi, q_color - 1, from_label, to_label, opt);
          std::cout << "psi q=" << q.label(q_color - 1) << " "
                    << mset.render(h) << "\n";
        } else {
          for (const auto& [qc, mset] : psi_full(d, phi, from_label, to_label, opt))
            std::cout << "psi q=" << q.label(qc) << " " << mset.render(h)
                      << "\n";
        }
      }
    } else if (c_sites->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      auto sites = find_move_sites(d, parse_move_kind(kind_name));
      std::cout << "sites " << sites.size() << "\n";
      for (size_t i = 0; i < sites.size(); ++i)
        std::cout << "site " << i << " " << sites[i].describe(d) << "\n";
    } else if (c_apply->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      auto sites = find_move_sites(d, parse_move_kind(kind_name));
      if (site_index < 0 || site_index >= static_cast<int>(sites.size()))
        fail(errc::invalid_site, "site index out of range");
      Diagram next = apply_move(d, sites[site_index]);
      if (out_path.empty())
        std::cout << next.serialize();
      else {
        std::ofstream out(out_path);
        out << next.serialize();
      }
    } else if (c_fuzz->parsed()) {
      Diagram d = load_diagram(diagram_spec);
      auto parts = split(invariant_spec, ':');
      std::string iname = parts[0];
      auto compute = [&](const Diagram& dia) -> std::string {
        if (iname == "colorings" || iname == "special-colorings") {
          std::string qspec = invariant_spec.substr(iname.size() + 1);
          FiniteQuandle q = parse_quandle_spec(qspec);
          return std::to_string(
              fuzz_colorings(dia, q, iname == "special-colorings", budget));
        }
        if (iname == "psi") {
          FiniteQuandle q = parse_quandle_spec(
              invariant_spec.substr(iname.size() + 1));
          FiniteGroup h = parse_group_spec(group_spec);
          TwoCocycle phi = load_cocycle(q, h, cocycle_spec);
          PsiOptions opt;
          opt.max_len = max_len;
          opt.budget = budget;
          std::ostringstream os;
          for (const auto& [qc, mset] :
               psi_full(dia, phi, from_label, to_label, opt))
            os << qc << ":" << mset.render(h) << ";";
          return os.str();
        }
        fail(errc::bad_argument, "unknown invariant: " + invariant_spec);
      };
      std::string before = compute(d);
      std::mt19937 rng(seed);
      const MoveKind kinds[] = {MoveKind::r1_plus,  MoveKind::r1_minus,
                                MoveKind::r2_plus,  MoveKind::r2_minus,
                                MoveKind::r3,       MoveKind::r4,
                                MoveKind::r5};
      int applied = 0;
      for (int step = 0; step < steps; ++step) {
        // collect applicable kinds
        std::vector<std::pair<MoveKind, std::vector<MoveSite>>> options;
        for (MoveKind k : kinds) {
          auto sites = find_move_sites(d, k);
          if (!sites.empty())
            options.push_back({k, std::move(sites)});
        }
        if (options.empty())
          break;
        bool moved = false;
        for (int attempt = 0; attempt < 20 && !moved; ++attempt) {
          auto& [k, sites] = options[rng() % options.size()];
          const MoveSite& site = sites[rng() % sites.size()];
          try {
            Diagram next = apply_move(d, site);
            int ncross = 0;
            for (const Node& nd : next.nodes())
              if (nd.kind == NodeKind::crossing)
                ++ncross;
            if (ncross > 60)
              continue; // keep the fuzz bounded
            std::cout << "step " << step << " " << site.describe(d) << "\n";
            d = std::move(next);
            moved = true;
          } catch (const error& e) {
            if (e.code() == errc::not_applicable)
              continue; // representation limit; try another site
            throw;
          }
        }
        if (!moved)
          break;
        ++applied;
        std::string after = compute(d);
        if (after != before) {
          std::cout << "MISMATCH after step " << step << ": " << before
                    << " -> " << after << "\n";
          return 4;
        }
      }
      std::cout << "applied " << applied << " moves, invariant stable ("
                << before << ")\n";
    } else if (c_mirror->parsed()) {
      Diagram d = load_diagram(diagram_spec).mirrored();
      if (out_path.empty())
        std::cout << d.serialize();
      else {
        std::ofstream out(out_path);
        out << d.serialize();
      }
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_budget() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
