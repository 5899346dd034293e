// slk — exact-arithmetic toolkit for Serre lattices with exceptional bases.
//
// Subcommands: check, mutate, classify, enumerate, orbit, blowup, blowdown,
// markov. Matrices are passed inline ("1 2; 0 1"), as JSON ({"gram": [[..]]}),
// or via stdin when the argument is '-'. Exit codes: 0 success, 1 malformed
// input, 2 domain violation, 3 search budget exhausted.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "slk/classify.hpp"
#include "slk/io.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitBudget = 3;

std::string read_input(const std::string& arg) {
    if (arg != "-") return arg;
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
}

slk::IntMatrix parse_matrix_arg(const std::string& arg) {
    return slk::parse_matrix_document(read_input(arg)).gram;
}

json matrix_json(const slk::IntMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); i++) {
        json row = json::array();
        for (int j = 0; j < m.cols(); j++) row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

json class_json(const slk::Verdict& v) {
    json j;
    j["class"] = slk::to_string(v.cls.tag);
    if (v.cls.tag == slk::ClassTag::NumBlowup) j["n"] = v.cls.n.get_str();
    j["delta"] = v.cls.delta.get_str();
    j["s_parity"] = v.cls.parity;
    j["witness"] = slk::format_word(v.witness);
    j["canonical"] = matrix_json(v.canonical);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

std::string class_label(const slk::CanonicalClass& cls) {
    if (cls.tag == slk::ClassTag::NumBlowup)
        return "NumBlowup(" + cls.n.get_str() + ")";
    return slk::to_string(cls.tag);
}

void print_verdict(const slk::Verdict& v, bool as_json) {
    if (as_json) {
        std::cout << class_json(v).dump(2) << "\n";
        return;
    }
    std::cout << "class: " << class_label(v.cls) << "\n"
              << "delta: " << v.cls.delta.get_str() << "\n"
              << "s_parity: " << (v.cls.parity ? "true" : "false") << "\n"
              << "witness: " << (v.witness.empty() ? "(empty)" : slk::format_word(v.witness))
              << "\n"
              << "canonical:\n"
              << slk::format_matrix_text(v.canonical) << "\n";
    if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
}

struct CheckReport {
    int rank = 0;
    bool exceptional = false;
    bool unipotent = false;
    slk::SurfaceType type = slk::SurfaceType::NotSurface;
    json values;  // markov_value or q1/q2
    bool has_delta = false;
    slk::Integer delta;
    bool has_parity = false;
    bool parity = false;
};

int cmd_check(const std::string& input, bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::SerreLattice L(m);
    CheckReport rep;
    rep.rank = L.rank();
    rep.exceptional = L.is_exceptional();
    rep.unipotent = slk::is_unipotent(L);
    rep.type = slk::surface_type(L);
    rep.values = json::object();
    if (rep.exceptional && rep.rank == 3)
        rep.values["markov_value"] = slk::markov_value(slk::coeffs3_of(m)).get_str();
    if (rep.exceptional && rep.rank == 4) {
        auto [q1, q2] = slk::rank4_values(slk::coeffs4_of(m));
        rep.values["q1"] = q1.get_str();
        rep.values["q2"] = q2.get_str();
    }
    if (rep.type != slk::SurfaceType::NotSurface) {
        rep.has_delta = true;
        rep.delta = slk::degree(L);
    }
    if (L.serre_integral()) {
        rep.has_parity = true;
        rep.parity = slk::s_parity(m);
    }
    if (as_json) {
        json j;
        j["rank"] = rep.rank;
        j["exceptional"] = rep.exceptional;
        j["unipotent"] = rep.unipotent;
        for (auto& [k, v] : rep.values.items()) j[k] = v;
        j["surface_type"] = slk::to_string(rep.type);
        j["delta"] = rep.has_delta ? json(rep.delta.get_str()) : json(nullptr);
        j["s_parity"] = rep.has_parity ? json(rep.parity) : json(nullptr);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "rank: " << rep.rank << "\n"
                  << "exceptional: " << (rep.exceptional ? "yes" : "no") << "\n"
                  << "unipotent: " << (rep.unipotent ? "yes" : "no") << "\n";
        for (auto& [k, v] : rep.values.items())
            std::cout << k << ": " << v.get<std::string>() << "\n";
        std::cout << "surface_type: " << slk::to_string(rep.type) << "\n";
        if (rep.has_delta) std::cout << "delta: " << rep.delta.get_str() << "\n";
        if (rep.has_parity)
            std::cout << "s_parity: " << (rep.parity ? "true" : "false") << "\n";
    }
    return rep.unipotent ? kExitOk : kExitDomain;
}

int cmd_mutate(const std::string& input, const std::string& word_text, bool display_order,
               bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::BraidWord w;
    try {
        w = slk::parse_word(word_text);
    } catch (const std::invalid_argument& e) {
        throw slk::ParseFailure(e.what());
    }
    if (display_order) std::reverse(w.begin(), w.end());
    slk::IntMatrix out = slk::apply_word(m, w);
    if (as_json) {
        json j;
        j["gram"] = matrix_json(out);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << slk::format_matrix_text(out) << "\n";
    }
    return kExitOk;
}

int cmd_classify(const std::string& input, bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::Verdict v = slk::classify(m);
    print_verdict(v, as_json);
    return kExitOk;
}

int cmd_enumerate(long long bound, bool classify_each, bool as_json) {
    auto sols = slk::enumerate_rank4(bound);
    std::vector<slk::Verdict> verdicts;
    if (classify_each) {
        verdicts.resize(sols.size());
        std::string failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < (long long)sols.size(); i++) {
            try {
                verdicts[size_t(i)] = slk::classify_rank4(slk::gram_of(sols[size_t(i)]));
            } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
                failure = e.what();
            }
        }
        if (!failure.empty()) throw slk::InternalInconsistency(failure);
    }
    std::map<std::string, size_t> histogram;
    for (const auto& v : verdicts) histogram[class_label(v.cls)]++;

    if (as_json) {
        json j;
        j["bound"] = bound;
        j["count"] = sols.size();
        json arr = json::array();
        for (size_t i = 0; i < sols.size(); i++) {
            json row;
            row["tuple"] = {sols[i].a.get_str(), sols[i].b.get_str(), sols[i].c.get_str(),
                            sols[i].d.get_str(), sols[i].e.get_str(), sols[i].f.get_str()};
            if (classify_each) {
                row["class"] = class_label(verdicts[i].cls);
                row["witness"] = slk::format_word(verdicts[i].witness);
            }
            arr.push_back(std::move(row));
        }
        j["solutions"] = std::move(arr);
        if (classify_each) {
            json h = json::object();
            for (auto& [k, c] : histogram) h[k] = c;
            j["histogram"] = std::move(h);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < sols.size(); i++) {
            const auto& t = sols[i];
            std::cout << t.a << " " << t.b << " " << t.c << " " << t.d << " " << t.e << " "
                      << t.f;
            if (classify_each) std::cout << "  ->  " << class_label(verdicts[i].cls);
            std::cout << "\n";
        }
        std::cout << "total: " << sols.size() << "\n";
        if (classify_each) {
            std::cout << "histogram:\n";
            for (auto& [k, c] : histogram) std::cout << "  " << k << ": " << c << "\n";
        }
    }
    return kExitOk;
}

size_t bfs_budget(size_t cli_value) {
    if (const char* env = std::getenv("SLK_MAX_NODES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return size_t(v);
    }
    return cli_value;
}

int cmd_orbit(const std::string& input, const std::string& target, size_t budget,
              long long max_entry, bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::IntMatrix t = parse_matrix_arg(target);
    slk::OrbitResult r =
        slk::orbit_bfs(m, t, slk::Integer(static_cast<long>(max_entry)), bfs_budget(budget));
    bool found = r.status == slk::OrbitResult::Status::Found;
    if (as_json) {
        json j;
        j["found"] = found;
        j["visited"] = r.visited;
        if (found) j["word"] = slk::format_word(r.word);
        else
            j["reason"] = r.status == slk::OrbitResult::Status::BudgetExhausted
                              ? "budget_exhausted"
                              : "frontier_exhausted";
        std::cout << j.dump(2) << "\n";
    } else if (found) {
        std::cout << "word: " << (r.word.empty() ? "(empty)" : slk::format_word(r.word)) << "\n"
                  << "length: " << r.word.size() << "\n";
    } else {
        std::cout << "not found ("
                  << (r.status == slk::OrbitResult::Status::BudgetExhausted
                          ? "budget exhausted"
                          : "orbit component exhausted")
                  << ", visited " << r.visited << ")\n";
    }
    return found ? kExitOk : kExitBudget;
}

int cmd_blowup(const std::string& input, const std::string& ztext, bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::Element z = slk::parse_element(ztext);
    slk::FilteredLattice fl = slk::filtered(slk::SerreLattice(m));
    slk::FilteredLattice out = slk::blowup(fl, z);
    slk::Integer delta = slk::degree_filtered(out.lattice, out.filt);
    if (as_json) {
        json j;
        j["gram"] = matrix_json(out.lattice.gram());
        j["delta"] = delta.get_str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << slk::format_matrix_text(out.lattice.gram()) << "\ndelta: " << delta << "\n";
    }
    return kExitOk;
}

int cmd_blowdown(const std::string& input, const std::string& ftext, bool as_json) {
    slk::IntMatrix m = parse_matrix_arg(input);
    slk::Element f = slk::parse_element(ftext);
    slk::FilteredLattice fl = slk::filtered(slk::SerreLattice(m));
    slk::Blowdown down = slk::blowdown(fl, f);
    slk::Integer delta = slk::degree_filtered(down.quotient.lattice, down.quotient.filt);
    if (as_json) {
        json j;
        j["gram"] = matrix_json(down.quotient.lattice.gram());
        json zv = json::array();
        for (const auto& x : down.z) zv.push_back(x.get_str());
        j["z"] = std::move(zv);
        j["delta"] = delta.get_str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << slk::format_matrix_text(down.quotient.lattice.gram()) << "\nz:";
        for (const auto& x : down.z) std::cout << " " << x;
        std::cout << "\ndelta: " << delta << "\n";
    }
    return kExitOk;
}

int cmd_markov(const std::string& a, const std::string& b, const std::string& c, bool as_json) {
    slk::Rank3Coeffs t;
    try {
        t = {slk::Integer(a), slk::Integer(b), slk::Integer(c)};
    } catch (const std::invalid_argument&) {
        throw slk::ParseFailure("markov: arguments must be integers");
    }
    slk::Integer value = slk::markov_value(t);
    if (as_json) {
        json j;
        j["value"] = value.get_str();
        if (value == 0) {
            slk::MarkovReduction red = slk::markov_reduce(t);
            j["canonical"] = {red.canonical.a.get_str(), red.canonical.b.get_str(),
                              red.canonical.c.get_str()};
            j["word"] = slk::format_word(red.word);
        }
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "markov_value: " << value << "\n";
    if (value != 0) return kExitOk;
    slk::MarkovReduction red = slk::markov_reduce(t);
    std::cout << "canonical: " << red.canonical.a << " " << red.canonical.b << " "
              << red.canonical.c << "\n"
              << "word: " << (red.word.empty() ? "(empty)" : slk::format_word(red.word)) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for Serre lattices with exceptional bases"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output (integers as decimal strings)");

    std::string input, target, word_text, ztext, ftext, ma, mb, mc;
    bool display_order = false, classify_each = false;
    long long bound = 0, max_entry = 1000000;
    size_t budget = 10000000;

    auto* c_check = app.add_subcommand("check", "report invariants of a Gram matrix");
    c_check->add_option("matrix", input, "matrix text, JSON, or '-' for stdin")->required();

    auto* c_mut = app.add_subcommand("mutate", "apply a braid word to a Gram matrix");
    c_mut->add_option("matrix", input)->required();
    c_mut->add_option("word", word_text, "tokens s<i> S<i> e<i>, applied leftmost first")
        ->required();
    c_mut->add_flag("--display-order", display_order,
                    "word is given in composition (rightmost-first) order");

    auto* c_cls = app.add_subcommand("classify", "canonical class, invariants, witness word");
    c_cls->add_option("matrix", input)->required();

    auto* c_enum = app.add_subcommand("enumerate", "all rank-4 solutions within an entry bound");
    c_enum->add_option("bound", bound)->required()->check(CLI::NonNegativeNumber);
    c_enum->add_flag("--classify", classify_each, "classify every solution and print a histogram");

    auto* c_orb = app.add_subcommand("orbit", "search a braid word connecting two matrices");
    c_orb->add_option("matrix", input)->required();
    c_orb->add_option("target", target)->required();
    c_orb->add_option("--budget", budget, "visited-node budget (SLK_MAX_NODES overrides)");
    c_orb->add_option("--max-entry", max_entry, "prune states with larger entries");

    auto* c_bup = app.add_subcommand("blowup", "numerical blowup at z in F2K");
    c_bup->add_option("matrix", input)->required();
    c_bup->add_option("z", ztext, "coordinates of z in the lattice basis")->required();

    auto* c_bdn = app.add_subcommand("blowdown", "numerical blowdown at an exceptional f in F1K");
    c_bdn->add_option("matrix", input)->required();
    c_bdn->add_option("f", ftext, "coordinates of f in the lattice basis")->required();

    auto* c_mkv = app.add_subcommand("markov", "Markov value and reduction of a rank-3 triple");
    c_mkv->add_option("a", ma)->required();
    c_mkv->add_option("b", mb)->required();
    c_mkv->add_option("c", mc)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (c_check->parsed()) return cmd_check(input, as_json);
        if (c_mut->parsed()) return cmd_mutate(input, word_text, display_order, as_json);
        if (c_cls->parsed()) return cmd_classify(input, as_json);
        if (c_enum->parsed()) return cmd_enumerate(bound, classify_each, as_json);
        if (c_orb->parsed()) return cmd_orbit(input, target, budget, max_entry, as_json);
        if (c_bup->parsed()) return cmd_blowup(input, ztext, as_json);
        if (c_bdn->parsed()) return cmd_blowdown(input, ftext, as_json);
        if (c_mkv->parsed()) return cmd_markov(ma, mb, mc, as_json);
    } catch (const slk::ParseFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const slk::InternalInconsistency& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}
