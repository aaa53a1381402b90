#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <arres/io.hpp>
#include <arres/verify.hpp>

namespace arres {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace cli_detail {

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

inline Vec parse_point(const std::string& csv) {
    Vec v;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(Rational::parse(item));
    if (v.empty()) throw domain_error("chamber point: empty coordinate list");
    return v;
}

inline json parse_json_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw domain_error(what + ": invalid JSON: " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<OrderedBasis> all_bases(const Arrangement& arr) {
    std::vector<OrderedBasis> out;
    OrderedBasis cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == arr.rank) {
            if (rank(gather(arr, cur)) == arr.rank) out.push_back(cur);
            return;
        }
        for (int i = start; i < arr.size(); ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::string subset_str(const IndexSubset& s) {
    std::string t = "{";
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
    return t + "}";
}

inline std::string mns_str(const MaximalNestedSet& mns) {
    std::string t;
    for (std::size_t i = 0; i < mns.members.size(); ++i) t += (i ? " " : "") + subset_str(mns.members[i]);
    return t;
}

} // namespace cli_detail

/// Runs one CLI invocation. Arguments exclude the program name; stdin is
/// consumed lazily through the provider so commands that need no input never
/// block on it.
inline CliResult run_cli(const std::vector<std::string>& args,
                         const std::function<std::string()>& read_stdin) {
    using cli_detail::usage_error;
    CliResult result;

    CLI::App app{"exact combinatorics and residues of central hyperplane arrangements"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string input_path;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->envname("ARRES_FORMAT");
    app.add_option("--input", input_path, "arrangement JSON file (default: stdin)")
        ->envname("ARRES_INPUT");

    int preset_n = 0;
    auto* cmd_preset = app.add_subcommand("preset-a", "emit the A_{n-1} root arrangement");
    cmd_preset->add_option("n", preset_n, "number of coordinates")->required();

    auto* cmd_info = app.add_subcommand("info", "validate and echo the arrangement");
    auto* cmd_irr = app.add_subcommand("irreducibles", "list all irreducible subsets");
    auto* cmd_nbc = app.add_subcommand("nbc", "list all no-broken-circuit bases");
    auto* cmd_nested = app.add_subcommand("nested", "list all maximal nested sets");
    auto* cmd_proper = app.add_subcommand("proper-mns", "list all proper maximal nested sets");
    auto* cmd_pairing = app.add_subcommand("pairing", "residue pairing matrix (identity)");

    std::string form_text, form_file;
    int mns_index = -1;
    auto* cmd_residue = app.add_subcommand("residue", "residue of a form at one nested set");
    auto* cmd_project = app.add_subcommand("project", "residues of a form at every nested set");
    for (auto* sc : {cmd_residue, cmd_project}) {
        sc->add_option("--form", form_text, "form as inline JSON")->envname("ARRES_FORM");
        sc->add_option("--form-file", form_file, "form JSON file")->envname("ARRES_FORM_FILE");
    }
    cmd_residue->add_option("--mns", mns_index, "index into the proper-mns order")
        ->envname("ARRES_MNS");

    std::string c_text, poly_text, query_text, xi_text, gamma_text;
    auto* cmd_jk = app.add_subcommand("jk", "Jeffrey-Kirwan residue at a chamber point");
    auto* cmd_inter = app.add_subcommand("intersection", "intersection-number functional");
    for (auto* sc : {cmd_jk, cmd_inter}) {
        sc->add_option("--c", c_text, "chamber point, comma-separated rationals")->envname("ARRES_C");
        sc->add_option("--poly", poly_text, "polynomial in the alpha symbols, JSON terms")
            ->envname("ARRES_POLY");
        sc->add_option("--xi", xi_text, "orientation basis rows, JSON")->envname("ARRES_XI");
        sc->add_option("--gamma", gamma_text, "lattice basis rows, JSON")->envname("ARRES_GAMMA");
    }
    cmd_jk->add_option("--form", form_text, "form as inline JSON")->envname("ARRES_FORM");
    cmd_jk->add_option("--form-file", form_file, "form JSON file")->envname("ARRES_FORM_FILE");
    cmd_jk->add_option("--query", query_text, "full query JSON {\"c\":..., \"form\":...}")
        ->envname("ARRES_QUERY");

    std::string epsilon_text = "1/8";
    int grid = 64, random_count = 0;
    unsigned seed = 0;
    double tolerance = 1e-6;
    auto* cmd_verify = app.add_subcommand("verify", "numeric quadrature against exact residues");
    cmd_verify->add_option("--form", form_text, "form as inline JSON")->envname("ARRES_FORM");
    cmd_verify->add_option("--form-file", form_file, "form JSON file")->envname("ARRES_FORM_FILE");
    cmd_verify->add_option("--mns", mns_index, "restrict to one nested set")->envname("ARRES_MNS");
    cmd_verify->add_option("--random", random_count, "verify this many random basis-form combinations")
        ->envname("ARRES_RANDOM");
    cmd_verify->add_option("--seed", seed, "seed for randomized verification")->envname("ARRES_SEED");
    cmd_verify->add_option("--epsilon", epsilon_text, "torus radius, rational")->envname("ARRES_EPSILON");
    cmd_verify->add_option("--grid", grid, "grid points per variable")->envname("ARRES_GRID");
    cmd_verify->add_option("--tolerance", tolerance, "pass threshold")->envname("ARRES_TOLERANCE");

    for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; })) sc->fallthrough();

    std::vector<const char*> argv{"arres"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        result.out = out.str();
        result.err = err.str();
        result.exit_code = code == 0 ? 0 : 2;
        return result;
    }

    std::ostringstream out;
    const bool table = format == "table";

    auto load_arrangement = [&]() {
        const std::string text = input_path.empty() ? read_stdin() : cli_detail::read_file(input_path);
        return arrangement_from_json(cli_detail::parse_json_text(text, "arrangement"));
    };
    auto load_form = [&](const Arrangement& arr) {
        if (!form_text.empty() && !form_file.empty())
            throw usage_error("give only one of --form / --form-file");
        if (!form_text.empty())
            return form_from_json(arr, cli_detail::parse_json_text(form_text, "form"));
        if (!form_file.empty())
            return form_from_json(
                arr, cli_detail::parse_json_text(cli_detail::read_file(form_file), "form"));
        throw usage_error("missing --form or --form-file");
    };
    auto load_context = [&](const Arrangement& arr) {
        auto ctx = OrientationContext::standard(arr.rank);
        if (!xi_text.empty())
            ctx.xi = basis_rows_from_json(cli_detail::parse_json_text(xi_text, "xi"), arr.rank);
        if (!gamma_text.empty())
            ctx.lattice =
                basis_rows_from_json(cli_detail::parse_json_text(gamma_text, "gamma"), arr.rank);
        check_context(arr, ctx);
        return ctx;
    };
    auto emit = [&](const json& j) { out << j.dump() << "\n"; };

    try {
        if (*cmd_preset) {
            const auto arr = type_a_preset(preset_n);
            if (table) {
                out << "type-A preset n=" << preset_n << ": rank " << arr.rank << ", " << arr.size()
                    << " vectors\n";
                for (const auto& v : arr.vectors) out << "  " << vec_to_json(v).dump() << "\n";
            } else {
                emit(arrangement_to_json(arr));
            }
        } else if (*cmd_info) {
            const auto arr = load_arrangement();
            json j = arrangement_to_json(arr);
            j["m"] = arr.size();
            if (table) {
                out << "rank: " << arr.rank << "\nm: " << arr.size() << "\n";
                for (int i = 0; i < arr.size(); ++i)
                    out << "  alpha_" << i << " = " << vec_to_json(arr.vectors[i]).dump() << "\n";
            } else {
                emit(j);
            }
        } else if (*cmd_irr) {
            const auto arr = load_arrangement();
            json j = json::array();
            for (const auto& s : enumerate_irreducibles(arr)) j.push_back(subset_to_json(s));
            if (table) {
                for (const auto& s : enumerate_irreducibles(arr))
                    out << cli_detail::subset_str(s) << "\n";
            } else {
                emit(j);
            }
        } else if (*cmd_nbc) {
            const auto arr = load_arrangement();
            json j = json::array();
            for (const auto& b : enumerate_nbc(arr)) j.push_back(subset_to_json(b));
            if (table) {
                for (const auto& b : enumerate_nbc(arr)) out << cli_detail::subset_str(b) << "\n";
            } else {
                emit(j);
            }
        } else if (*cmd_nested) {
            const auto arr = load_arrangement();
            const auto all = enumerate_maximal_nested(arr);
            if (table) {
                for (const auto& mns : all)
                    out << cli_detail::mns_str(mns) << (is_proper(arr, mns) ? "  [proper]" : "") << "\n";
            } else {
                json j = json::array();
                for (const auto& mns : all) j.push_back(mns_to_json(mns));
                emit(j);
            }
        } else if (*cmd_proper) {
            const auto arr = load_arrangement();
            const auto props = enumerate_proper_mns(arr);
            if (table) {
                for (const auto& pm : props)
                    out << cli_detail::mns_str(pm.mns)
                        << "  phi=" << cli_detail::subset_str(pm.phi) << "\n";
            } else {
                json j = json::array();
                for (const auto& pm : props) j.push_back(proper_mns_to_json(pm));
                emit(j);
            }
        } else if (*cmd_pairing) {
            const auto arr = load_arrangement();
            const auto p = pairing_matrix(arr);
            if (table) {
                for (const auto& row : p) {
                    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j].str();
                    out << "\n";
                }
            } else {
                json j = json::array();
                for (const auto& row : p) {
                    json r = json::array();
                    for (const auto& e : row) r.push_back(e.str());
                    j.push_back(std::move(r));
                }
                emit(j);
            }
        } else if (*cmd_residue) {
            const auto arr = load_arrangement();
            const auto psi = load_form(arr);
            const auto props = enumerate_proper_mns(arr);
            if (mns_index < 0 || mns_index >= static_cast<int>(props.size()))
                throw usage_error("--mns must index into the proper-mns order");
            const auto& pm = props[mns_index];
            const Rational res = residue(arr, psi, pm);
            if (table) {
                out << "residue at " << cli_detail::mns_str(pm.mns) << " = " << res.str() << "\n";
            } else {
                json j;
                j["mns"] = mns_to_json(pm.mns);
                j["phi"] = subset_to_json(pm.phi);
                j["residue"] = res.str();
                emit(j);
            }
        } else if (*cmd_project) {
            const auto arr = load_arrangement();
            const auto psi = load_form(arr);
            const auto props = enumerate_proper_mns(arr);
            const auto coords = project(arr, psi);
            if (table) {
                for (std::size_t i = 0; i < props.size(); ++i)
                    out << cli_detail::mns_str(props[i].mns) << "  residue=" << coords[i].str() << "\n";
            } else {
                json j = json::array();
                for (std::size_t i = 0; i < props.size(); ++i) {
                    json e;
                    e["mns"] = mns_to_json(props[i].mns);
                    e["phi"] = subset_to_json(props[i].phi);
                    e["residue"] = coords[i].str();
                    j.push_back(std::move(e));
                }
                emit(j);
            }
        } else if (*cmd_jk || *cmd_inter) {
            const auto arr = load_arrangement();
            const auto ctx = load_context(arr);
            Vec c;
            RationalTopForm psi = zero_form(arr);
            if (*cmd_jk && !query_text.empty()) {
                const json q = cli_detail::parse_json_text(query_text, "query");
                if (!q.is_object() || !q.contains("c") || !q.contains("form"))
                    throw domain_error("query: needs \"c\" and \"form\"");
                c = vec_from_json(q.at("c"));
                if (q.at("form").is_object() && q.at("form").contains("poly_in_alphas"))
                    psi = alpha_poly_form(arr,
                                          poly_from_json(q.at("form").at("poly_in_alphas"), arr.size()));
                else
                    psi = form_from_json(arr, q.at("form"));
            } else {
                if (c_text.empty()) throw usage_error("missing --c");
                c = cli_detail::parse_point(c_text);
                if (*cmd_inter || !poly_text.empty()) {
                    if (poly_text.empty()) throw usage_error("missing --poly");
                    psi = alpha_poly_form(
                        arr, poly_from_json(cli_detail::parse_json_text(poly_text, "poly"), arr.size()));
                } else {
                    psi = load_form(arr);
                }
            }
            if (c.size() != static_cast<std::size_t>(arr.rank))
                throw domain_error("chamber point: wrong dimension");
            const Rational value = jk_residue(arr, ctx, c, psi);
            json decomposition = json::array();
            for (const auto& [pm, sign] : delta_decomposition(arr, ctx, c)) {
                json e;
                e["mns"] = mns_to_json(pm.mns);
                e["sign"] = sign;
                e["residue"] = residue(arr, psi, pm).str();
                decomposition.push_back(std::move(e));
            }
            if (table) {
                out << "value = " << value.str() << "\n";
                for (const auto& e : decomposition)
                    out << "  mns=" << e["mns"].dump() << " sign=" << e["sign"].dump()
                        << " residue=" << e["residue"].get<std::string>() << "\n";
            } else {
                json j;
                j["value"] = value.str();
                j["c"] = vec_to_json(c);
                if (*cmd_inter) j["form"] = form_to_json(psi);
                j["decomposition"] = std::move(decomposition);
                emit(j);
            }
        } else if (*cmd_verify) {
            const auto arr = load_arrangement();
            QuadratureSpec spec;
            spec.epsilon = Rational::parse(epsilon_text);
            spec.grid = grid;
            spec.tolerance = tolerance;
            const auto props = enumerate_proper_mns(arr);
            if (mns_index >= static_cast<int>(props.size()))
                throw usage_error("--mns must index into the proper-mns order");
            std::vector<std::pair<std::string, RationalTopForm>> forms;
            if (random_count > 0) {
                std::mt19937 rng(seed);
                std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
                const auto bases = cli_detail::all_bases(arr);
                for (int k = 0; k < random_count; ++k) {
                    RationalTopForm f = zero_form(arr);
                    for (const auto& sigma : bases)
                        f = add_forms(arr, f,
                                      scale_form(form_of_basis(arr, sigma),
                                                 Rational(num(rng), den(rng))));
                    forms.emplace_back("random-" + std::to_string(k), f);
                }
            } else {
                forms.emplace_back("form", load_form(arr));
            }
            bool all_pass = true;
            json cases = json::array();
            for (const auto& [label, f] : forms) {
                for (std::size_t i = 0; i < props.size(); ++i) {
                    if (mns_index >= 0 && static_cast<int>(i) != mns_index) continue;
                    const Rational exact = residue(arr, f, props[i]);
                    const auto numeric = numeric_cycle_integral(arr, f, props[i], spec);
                    const double err =
                        std::abs(numeric - std::complex<double>(exact.to_double(), 0.0));
                    const bool pass = err < spec.tolerance;
                    all_pass = all_pass && pass;
                    json e;
                    e["form"] = label;
                    e["mns"] = mns_to_json(props[i].mns);
                    e["exact"] = exact.str();
                    e["numeric"] = json::array({numeric.real(), numeric.imag()});
                    e["abs_error"] = err;
                    e["pass"] = pass;
                    cases.push_back(std::move(e));
                }
            }
            if (table) {
                for (const auto& e : cases)
                    out << (e["pass"].get<bool>() ? "PASS" : "FAIL") << " " << e["form"].get<std::string>()
                        << " at " << e["mns"].dump() << ": exact=" << e["exact"].get<std::string>()
                        << " err=" << e["abs_error"].get<double>() << "\n";
            } else {
                json j;
                j["epsilon"] = spec.epsilon.str();
                j["grid"] = spec.grid;
                j["tolerance"] = spec.tolerance;
                j["cases"] = std::move(cases);
                j["all_pass"] = all_pass;
                emit(j);
            }
            result.out = out.str();
            result.exit_code = all_pass ? 0 : 1;
            return result;
        }
    } catch (const usage_error& e) {
        result.err = std::string("usage error: ") + e.what() + "\n";
        result.exit_code = 2;
        return result;
    } catch (const domain_error& e) {
        json j;
        j["error"] = e.what();
        result.out = j.dump() + "\n";
        result.exit_code = 1;
        return result;
    } catch (const std::exception& e) {
        json j;
        j["error"] = std::string("internal: ") + e.what();
        result.out = j.dump() + "\n";
        result.exit_code = 1;
        return result;
    }

    result.out = out.str();
    return result;
}

inline CliResult run_cli(const std::vector<std::string>& args, const std::string& stdin_text) {
    return run_cli(args, [&stdin_text]() { return stdin_text; });
}

} // namespace arres
