#include "kaccoh/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kaccoh/cech.hpp"
#include "kaccoh/mvss.hpp"

namespace kaccoh {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<std::vector<long>> read_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    ordered_json j = ordered_json::parse(in);
    if (!j.contains("matrix")) throw std::runtime_error("input JSON lacks a \"matrix\" key");
    return j.at("matrix").get<std::vector<std::vector<long>>>();
}

ordered_json members_1based(Subset s) {
    ordered_json arr = ordered_json::array();
    for (int i : subset_members(s)) arr.push_back(i + 1);
    return arr;
}

std::string overall_type_name(const TypeLabel& t) {
    if (!t.decomposable) return block_type_name(t.blocks[0].type);
    return t.finite_overall ? "Finite" : "Infinite";
}

Subset parse_subset(const std::string& text, int n) {
    if (text.empty()) throw std::runtime_error("--subset is required for this command");
    if (text == "none") return 0;
    if (text == "all") return (Subset(1) << n) - 1;
    Subset s = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = std::stoi(tok);
        if (v < 1 || v > n) throw std::runtime_error("--subset index out of range: " + tok);
        s |= Subset(1) << (v - 1);
    }
    return s;
}

std::vector<Subset> apply_order(const std::vector<Subset>& maximal,
                                const std::vector<int>& positions) {
    if (positions.size() != maximal.size())
        throw std::runtime_error("--order must list each maximal simplex position exactly once");
    std::vector<bool> used(maximal.size(), false);
    std::vector<Subset> out;
    for (int p : positions) {
        if (p < 1 || static_cast<std::size_t>(p) > maximal.size() || used[p - 1])
            throw std::runtime_error("--order is not a permutation of 1.." +
                                     std::to_string(maximal.size()));
        used[p - 1] = true;
        out.push_back(maximal[p - 1]);
    }
    return out;
}

ordered_json dims_json(const DimensionTable& t) { return ordered_json(t.dims); }

ordered_json classification_json(const CartanMatrix& A) {
    TypeLabel t = classify(A);
    ordered_json out;
    out["type"] = overall_type_name(t);
    out["decomposable"] = t.decomposable;
    ordered_json blocks = ordered_json::array();
    for (const auto& b : t.blocks) {
        ordered_json jb;
        jb["members"] = members_1based(b.members);
        jb["type"] = block_type_name(b.type);
        blocks.push_back(jb);
    }
    out["blocks"] = blocks;
    if (t.finite_overall) {
        ordered_json dyn = ordered_json::array();
        for (const auto& b : dynkin_type(A)) dyn.push_back(b.name());
        out["dynkin"] = dyn;
    }
    return out;
}

ordered_json cohomology_json(const CartanMatrix& A, const CohomologyResult& res) {
    ordered_json out;
    out["classification"] = classification_json(A);
    ordered_json maximal = ordered_json::array();
    for (Subset s : finite_subsets(A).maximal) maximal.push_back(members_1based(s));
    out["maximal"] = maximal;
    ordered_json order = ordered_json::array();
    for (Subset s : res.items.order) order.push_back(members_1based(s));
    out["order"] = order;
    ordered_json items = ordered_json::array();
    for (std::size_t i = 0; i < res.items.items.size(); ++i) {
        const Item& it = res.items.items[i];
        ordered_json ji;
        ji["shift"] = it.shift;
        ji["expr"] = item_to_string(it);
        ji["dims"] = dims_json(res.per_item[i]);
        ji["trivially_zero"] = it.trivially_zero;
        ji["zero_up_to_cutoff"] = static_cast<bool>(res.zero_up_to_cutoff[i]);
        items.push_back(ji);
    }
    out["items"] = items;
    out["total"] = dims_json(res.total);
    ordered_json by_shift;
    for (const auto& [r, table] : res.by_shift) by_shift[std::to_string(r)] = dims_json(table);
    out["by_shift"] = by_shift;
    return out;
}

std::string render(const ordered_json& j, const std::string& format) {
    if (format == "json") return j.dump(2) + "\n";
    // table rendering: shallow pretty text
    std::ostringstream os;
    std::function<void(const ordered_json&, int)> walk = [&](const ordered_json& v, int indent) {
        std::string pad(static_cast<std::size_t>(indent), ' ');
        if (v.is_object()) {
            for (const auto& [k, val] : v.items()) {
                if (val.is_object() || (val.is_array() && !val.empty() && val[0].is_object())) {
                    os << pad << k << ":\n";
                    walk(val, indent + 2);
                } else {
                    os << pad << k << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                       << "\n";
                }
            }
        } else if (v.is_array()) {
            for (const auto& item : v) {
                if (item.is_object()) {
                    walk(item, indent);
                    os << "\n";
                } else {
                    os << pad << item.dump() << "\n";
                }
            }
        } else {
            os << pad << v.dump() << "\n";
        }
    };
    walk(j, 0);
    return os.str();
}

ExecResult run_command(const RunConfig& config) {
    CartanMatrix A = validate(read_matrix(config.input_path));
    const int D = config.max_degree;
    ordered_json out;
    int status = 0;

    if (config.command == "classify") {
        out = classification_json(A);
    } else if (config.command == "category") {
        SimplicialCategory cat = finite_subsets(A);
        ordered_json simplices = ordered_json::array();
        for (Subset s : cat.simplices) simplices.push_back(members_1based(s));
        ordered_json maximal = ordered_json::array();
        for (Subset s : cat.maximal) maximal.push_back(members_1based(s));
        out["simplices"] = simplices;
        out["maximal"] = maximal;
    } else if (config.command == "invariants") {
        Subset J = parse_subset(config.subset, A.n);
        Context ctx(A);
        DimensionTable dims(D);
        for (int d = 0; 2 * d <= D; ++d)
            dims.dims[static_cast<std::size_t>(2 * d)] = ctx.invariant_dim(J, d);
        out["subset"] = members_1based(J);
        out["dims"] = dims_json(dims);
    } else if (config.command == "cohomology" || config.command == "oracle-check") {
        Context ctx(A);
        std::optional<std::vector<Subset>> order;
        std::vector<Subset> maximal = finite_subsets(A).maximal;
        if (config.order) order = apply_order(maximal, *config.order);
        CohomologyResult res = cohomology(ctx, D, order);
        out = cohomology_json(A, res);
        if (config.command == "oracle-check") {
            E2Result e2 = e2_dims(ctx, res.items.order, D);
            bool match = true;
            ordered_json columns;
            for (int r = 0; r < e2.d; ++r) {
                std::vector<long> mv(static_cast<std::size_t>(D) + 1, 0),
                    ce(static_cast<std::size_t>(D) + 1, 0);
                auto it = res.by_shift.find(r);
                for (int N = r; N <= D; ++N) {
                    if ((N - r) % 2 != 0) continue;
                    if (it != res.by_shift.end()) mv[static_cast<std::size_t>(N)] = it->second.at(N);
                    ce[static_cast<std::size_t>(N)] = e2.e2_at(r, N - r);
                    if (mv[static_cast<std::size_t>(N)] != ce[static_cast<std::size_t>(N)])
                        match = false;
                }
                ordered_json col;
                col["mvss"] = mv;
                col["e2"] = ce;
                columns[std::to_string(r)] = col;
            }
            out["oracle"] = ordered_json{{"match", match},
                                         {"through_degree", D},
                                         {"columns", columns}};
            out["verdict"] = match ? "MATCH through degree " + std::to_string(D)
                                   : "MISMATCH detected";
            if (!match) status = 1;
        }
    } else if (config.command == "conjecture") {
        Context ctx(A);
        if (classify(A).finite_overall)
            throw FiniteTypeInput("the sum conjecture concerns matrices of infinite type");
        DimensionTable residual = conjecture_sum_check(ctx, D / 2);
        bool all_zero = true;
        for (long v : residual.dims)
            if (v != 0) all_zero = false;
        out["max_poly_degree"] = D / 2;
        out["residual"] = dims_json(residual);
        out["all_zero"] = all_zero;
        if (!all_zero) out["finding"] = "nonzero residual: P != P_1 + ... + P_n at the marked degrees";
    } else if (config.command == "borel") {
        Context ctx(A);
        out["dims"] = dims_json(borel_image_dims(ctx, D));
    } else if (config.command == "prop51") {
        Subset I = parse_subset(config.subset, A.n);
        if (I == A.full_set()) throw std::runtime_error("prop51 requires a proper subset");
        auto C = prop51_change_of_basis(A, I);
        out["subset"] = members_1based(I);
        out["consistent"] = C.has_value();
        if (C) {
            ordered_json rows = ordered_json::array();
            for (std::size_t r = 0; r < C->rows; ++r) {
                ordered_json row = ordered_json::array();
                for (std::size_t c = 0; c < C->cols; ++c) {
                    std::ostringstream os;
                    os << C->at(r, c);
                    row.push_back(os.str());
                }
                rows.push_back(row);
            }
            out["C"] = rows;
        }
    } else {
        throw std::runtime_error("unknown command: " + config.command);
    }

    return {status, render(out, config.format)};
}

}  // namespace

ExecResult execute(const RunConfig& config) {
    try {
        return run_command(config);
    } catch (const std::exception& e) {
        ordered_json err{{"error", e.what()}};
        return {1, render(err, config.format)};
    }
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"exact rational cohomology of classifying spaces of Kac-Moody groups"};
    app.require_subcommand(1);

    RunConfig config;
    std::string order_text;
    for (const char* name : {"classify", "category", "invariants", "cohomology", "oracle-check",
                             "conjecture", "borel", "prop51"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("-i,--input", config.input_path, "input JSON file with a \"matrix\" key")
            ->required();
        sub->add_option("--max-degree", config.max_degree, "max cohomological degree (default 24)");
        sub->add_option("--order", order_text,
                        "comma-separated 1-based positions permuting the maximal simplices");
        sub->add_option("--cap", config.cap, "group order cap");
        sub->add_option("--subset", config.subset, "comma-separated 1-based indices, or all/none");
        sub->add_option("--format", config.format, "table | json")
            ->check(CLI::IsMember({"table", "json"}));
        sub->add_option("-o,--output", config.output_path, "output path (default stdout)");
        sub->callback([&config, name]() { config.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (!order_text.empty()) {
        std::vector<int> positions;
        std::stringstream ss(order_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) positions.push_back(std::stoi(tok));
        config.order = positions;
    }
    if (config.max_degree < 0) {
        std::cerr << "--max-degree must be >= 0\n";
        return 1;
    }

    ExecResult res = execute(config);
    if (config.output_path.empty()) {
        std::cout << res.report;
    } else {
        std::ofstream outf(config.output_path);
        if (!outf) {
            std::cerr << "cannot open output file: " << config.output_path << "\n";
            return 1;
        }
        outf << res.report;
    }
    return res.status;
}

}  // namespace kaccoh
