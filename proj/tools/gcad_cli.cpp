#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gcad/cadlift.hpp"

using json = nlohmann::ordered_json;
using namespace gcad;

namespace {

struct ProblemFile {
    VarsPtr vars;
    std::vector<BasicConstructibleSet> sets;
    bool has_constraint = false;
    Ideal constraint_eq;
    Polynomial constraint_ineq;
    std::string formula;
};

[[noreturn]] void input_error(const std::string& why) {
    throw std::invalid_argument("problem file: " + why);
}

std::vector<std::string> quoted_strings(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while ((i = text.find('"', i)) != std::string::npos) {
        std::size_t j = text.find('"', i + 1);
        if (j == std::string::npos) input_error("unterminated string literal");
        out.push_back(text.substr(i + 1, j - i - 1));
        i = j + 1;
    }
    return out;
}

// `{ eqs: [ "p1", "p2" ], ineq: "h" }`; both keys optional
void parse_block(const std::string& block, const VarsPtr& vars, std::vector<Polynomial>& eqs,
                 Polynomial& ineq) {
    ineq = Polynomial::constant(vars, Rational(1));
    std::size_t e = block.find("eqs:");
    if (e != std::string::npos) {
        std::size_t lb = block.find('[', e);
        std::size_t rb = block.find(']', e);
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
            input_error("eqs expects a [ ... ] list");
        for (const auto& s : quoted_strings(block.substr(lb, rb - lb)))
            eqs.push_back(parse_poly(vars, s));
    }
    std::size_t h = block.find("ineq:");
    if (h != std::string::npos) {
        auto qs = quoted_strings(block.substr(h));
        if (qs.empty()) input_error("ineq expects a quoted polynomial");
        ineq = parse_poly(vars, qs.front());
    }
}

ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) input_error("cannot open '" + path + "'");
    ProblemFile pf;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t c = line.find('#');
        if (c != std::string::npos) line.erase(c);
        std::istringstream probe(line);
        std::string key;
        if (!(probe >> key)) continue;
        if (key == "vars:") {
            VarList names;
            std::string v;
            while (probe >> v) names.push_back(v);
            if (names.empty()) input_error("vars: expects at least one name");
            pf.vars = make_vars(std::move(names));
        } else if (key == "set:" || key == "constraint:") {
            if (!pf.vars) input_error("vars: must precede " + key);
            std::string block(line);
            auto balanced = [](const std::string& s) {
                long d = 0;
                for (char ch : s) d += (ch == '{') - (ch == '}');
                return d == 0 && s.find('{') != std::string::npos;
            };
            while (!balanced(block) && std::getline(in, line)) block += "\n" + line;
            if (!balanced(block)) input_error(key + " block has unbalanced braces");
            std::vector<Polynomial> eqs;
            Polynomial ineq;
            parse_block(block, pf.vars, eqs, ineq);
            if (key == "set:") {
                pf.sets.push_back({Ideal(pf.vars, std::move(eqs)), std::move(ineq), true});
            } else {
                pf.has_constraint = true;
                pf.constraint_eq = Ideal(pf.vars, std::move(eqs));
                pf.constraint_ineq = std::move(ineq);
            }
        } else if (key == "formula:") {
            auto qs = quoted_strings(line);
            if (qs.empty()) input_error("formula: expects a quoted string");
            pf.formula = qs.front();
        } else {
            input_error("unknown directive '" + key + "'");
        }
    }
    return pf;
}

// ------------------------------------------------------- JSON serialization

json ran_json(const RealAlgebraicNumber& r) {
    if (r.is_rational()) return json{{"value", to_string(r.rational_value())}};
    static const VarsPtr xctx = make_vars({"x"});
    return json{{"defining", from_upoly(r.defining(), xctx, 0).str()},
                {"lo", to_string(r.lo())},
                {"hi", to_string(r.hi())}};
}

const char* kind_name(CellKind k) {
    switch (k) {
        case CellKind::Point: return "point";
        case CellKind::Interval: return "interval";
        case CellKind::Section: return "section";
        case CellKind::Band: return "band";
    }
    return "?";
}

json cell_json(const Cell& c) {
    json membership = json::object();
    for (std::size_t i = 0; i < c.inside.size(); ++i)
        membership[std::to_string(i)] = static_cast<bool>(c.inside[i]);
    json sample = json::array();
    for (const auto& r : c.sample) sample.push_back(ran_json(r));
    return json{{"path", c.path},   {"level", c.level},   {"kind", kind_name(c.kind)},
                {"index", c.index}, {"dim", c.dim},       {"sample", sample},
                {"membership", membership}};
}

json set_json(const BasicConstructibleSet& s) {
    json eqs = json::array();
    for (const auto& g : s.I.gens) eqs.push_back(g.str());
    return json{{"eqs", eqs}, {"ineq", s.h.str()}, {"certified", s.certified}};
}

json tree_json(const CellTree& t) {
    json levels = json::array();
    for (const auto& lvl : t.levels) {
        json cells = json::array();
        for (const auto& c : lvl) cells.push_back(cell_json(c));
        levels.push_back(std::move(cells));
    }
    json precells = json::array();
    for (const auto& lvl : t.precells) {
        json sets = json::array();
        for (const auto& s : lvl) sets.push_back(set_json(s));
        precells.push_back(std::move(sets));
    }
    json vars = json::array();
    if (t.vars)
        for (const auto& v : *t.vars) vars.push_back(v);
    return json{{"vars", vars},
                {"certified", t.certified},
                {"levels", std::move(levels)},
                {"precells", std::move(precells)}};
}

json count_json(const FiberCount& c) {
    if (c.infinite) return "inf";
    return c.count;
}

// ------------------------------------------------------- SVG emission

// schematic cell diagram in the style of the paper's figures: one column per
// level-1 cell, one box per level-2 cell, colors keyed by membership
std::string emit_svg(const CellTree& tree) {
    const int W = 640, H = 480;
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    if (tree.levels.empty()) {
        svg << "</svg>\n";
        return svg.str();
    }
    if (tree.levels.size() < 2)
        throw std::invalid_argument("svg: the drawn decomposition must have two levels");
    static const char* palette[] = {"#dfe8f5", "#f5e3df", "#e2f5df", "#f3f0d0",
                                    "#e8dff5", "#dff2f5", "#f5dfee", "#e5e5e5"};
    const auto& parents = tree.levels[0];
    const auto& cells = tree.levels[1];
    double colw = double(W) / double(parents.size());
    for (std::size_t pi = 0; pi < parents.size(); ++pi) {
        std::vector<const Cell*> column;
        for (const auto& c : cells)
            if (c.parent == long(pi)) column.push_back(&c);
        if (column.empty()) continue;
        double boxh = double(H) / double(column.size());
        for (std::size_t j = 0; j < column.size(); ++j) {
            const Cell& c = *column[j];
            std::size_t bits = 0;
            for (std::size_t k = 0; k < c.inside.size(); ++k)
                if (c.inside[k]) bits = bits * 2 + k + 1;
            svg << "  <rect class=\"region " << kind_name(c.kind) << "\" data-path=\""
                << c.path[0] << "." << c.path[1] << "\" x=\"" << pi * colw << "\" y=\""
                << H - (j + 1) * boxh << "\" width=\"" << colw << "\" height=\"" << boxh
                << "\" fill=\"" << palette[bits % 8] << "\" stroke=\"#444\"><title>"
                << c.sample[0].str() << ", " << c.sample[1].str() << "</title></rect>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<Polynomial> all_eqs(const ProblemFile& pf) {
    std::vector<Polynomial> out;
    for (const auto& s : pf.sets)
        for (const auto& g : s.I.gens) out.push_back(g);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geometric cylindrical algebraic decomposition"};
    std::string command, input_path, svg_path, heuristics;
    std::size_t max_refine = 0, params = 0;
    long seed = 0;
    bool with_ecs = false, full = false;
    app.add_option("command", command, "classify | cad | decide | classify-real | partition1d")
        ->required();
    app.add_option("input", input_path, "problem file")->required();
    app.add_flag("--with-ecs", with_ecs, "exploit the constraint block (cad)");
    app.add_flag("--full", full, "full-space lifting instead of relevant-only");
    app.add_option("--heuristics", heuristics,
                   "comma list from dedup,empty,squarefree,factor,discard-open");
    app.add_option("--max-refine", max_refine, "refinement budget per operation");
    app.add_option("--seed", seed, "sampling seed (recorded in the output)");
    app.add_option("--params", params, "parameter count (default: all but one variable)");
    app.add_option("--svg", svg_path, "write a schematic cell diagram (cad, 2 levels)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (max_refine > 0) set_refine_limit(max_refine);
        SimplifyFlags flags;
        if (!heuristics.empty()) {
            flags = SimplifyFlags{false, false, false, false, false};
            std::stringstream hs(heuristics);
            std::string h;
            while (std::getline(hs, h, ',')) {
                if (h == "dedup") flags.dedup = true;
                else if (h == "empty") flags.drop_empty = true;
                else if (h == "squarefree") flags.squarefree = true;
                else if (h == "factor") flags.factor = true;
                else if (h == "discard-open") flags.discard_open = true;
                else input_error("unknown heuristic '" + h + "'");
            }
        }

        ProblemFile pf = parse_problem(input_path);
        json out{{"schema", "gcad/1"}, {"command", command}, {"seed", seed}};
        json warnings = json::array();

        if (command == "decide") {
            if (pf.formula.empty()) input_error("decide needs a formula: directive");
            PrenexFormula phi = parse_formula(pf.formula);
            if (pf.vars && *phi.vars != *pf.vars)
                input_error("formula variables do not match the declaration");
            out["result"] = json{{"value", decide(phi)}};
        } else if (command == "classify") {
            if (!pf.vars || pf.sets.empty()) input_error("classify needs vars: and one set:");
            std::size_t split = params > 0 ? params : pf.vars->size() - 1;
            auto regions = fiber_classification(pf.sets.front().I, Ideal::zero(pf.vars),
                                                pf.sets.front().h, split);
            json rs = json::array();
            for (const auto& r : regions) {
                json a = json::array(), b = json::array();
                for (const auto& g : r.a.gens) a.push_back(g.str());
                for (const auto& g : r.b.gens) b.push_back(g.str());
                if (!r.certified) warnings.push_back("uncertified decomposition branch");
                rs.push_back(json{{"a", std::move(a)},
                                  {"b", std::move(b)},
                                  {"count", count_json(r.count)},
                                  {"certified", r.certified}});
            }
            out["result"] = json{{"regions", std::move(rs)}};
        } else if (command == "classify-real") {
            if (!pf.vars || pf.sets.empty()) input_error("classify-real needs vars: and one set:");
            std::size_t split = params > 0 ? params : pf.vars->size() - 1;
            auto regions = classify_real(pf.sets.front().I, pf.sets.front().h, split);
            json rs = json::array();
            for (const auto& r : regions)
                rs.push_back(json{{"cell", cell_json(r.cell)}, {"count", count_json(r.count)}});
            out["result"] = json{{"regions", std::move(rs)}};
        } else if (command == "cad") {
            if (!pf.vars) input_error("cad needs vars:");
            LiftMode mode = full ? LiftMode::Full : LiftMode::RelevantOnly;
            CellTree tree;
            if (with_ecs) {
                if (!pf.has_constraint) input_error("--with-ecs needs a constraint: block");
                tree = cad_with_constraints(pf.constraint_eq, pf.constraint_ineq, all_eqs(pf),
                                            mode);
            } else {
                if (pf.sets.empty()) input_error("cad needs at least one set:");
                tree = geometric_cad(pf.sets, mode, flags);
            }
            if (!tree.certified) warnings.push_back("uncertified decomposition branch");
            out["result"] = tree_json(tree);
            if (!svg_path.empty()) {
                std::ofstream svg(svg_path);
                if (!svg) input_error("cannot write '" + svg_path + "'");
                svg << emit_svg(tree);
            }
        } else if (command == "partition1d") {
            if (!pf.vars || pf.vars->size() != 1)
                input_error("partition1d needs a single variable");
            std::vector<Polynomial> polys = all_eqs(pf);
            for (const auto& s : pf.sets)
                if (!s.h.is_constant()) polys.push_back(s.h);
            json cs = json::array();
            for (const auto& c : partition1d(polys)) {
                if (c.is_point)
                    cs.push_back(json{{"kind", "point"}, {"value", ran_json(c.point)}});
                else
                    cs.push_back(json{{"kind", "interval"}, {"sample", to_string(c.sample)}});
            }
            out["result"] = json{{"cells", std::move(cs)}};
        } else {
            input_error("unknown command '" + command + "'");
        }

        out["warnings"] = std::move(warnings);
        std::cout << out.dump(2) << "\n";
        return 0;
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 4;
    }
}
