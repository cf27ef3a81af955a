#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "frobstab/selfcheck.hpp"

namespace {

using frobstab::Advice;
using frobstab::CaseIIBound;
using frobstab::Citation;
using frobstab::citation_tag;
using frobstab::EFlags;
using frobstab::FormsTable;
using frobstab::HNPolygon;
using frobstab::Json;
using frobstab::Rational;
using frobstab::SheafStats;
using frobstab::SlopeProfile;
using frobstab::VarietyContext;
using frobstab::ZiVerdict;

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void render_table(const Json& v, std::ostream& os, const std::string& prefix);

// Arrays of flat same-keyed objects print as aligned columns; everything
// else falls back to indented key/value lines.
void render_array(const Json& arr, std::ostream& os, const std::string& prefix) {
    const bool tabular =
        !arr.empty() && std::all_of(arr.begin(), arr.end(), [&](const Json& row) {
            return row.is_object() && row.size() == arr.front().size() &&
                   std::all_of(row.begin(), row.end(),
                               [](const Json& item) { return is_scalar(item); });
        });
    if (tabular) {
        std::vector<std::string> keys;
        for (const auto& item : arr.front().items()) keys.push_back(item.key());
        std::vector<std::size_t> width;
        for (const auto& k : keys) width.push_back(k.size());
        std::vector<std::vector<std::string>> cells;
        for (const auto& row : arr) {
            std::vector<std::string> line;
            for (std::size_t i = 0; i < keys.size(); ++i) {
                line.push_back(scalar_text(row.at(keys[i])));
                width[i] = std::max(width[i], line.back().size());
            }
            cells.push_back(std::move(line));
        }
        os << prefix;
        for (std::size_t i = 0; i < keys.size(); ++i)
            os << (i ? "  " : "") << keys[i] << std::string(width[i] - keys[i].size(), ' ');
        os << "\n";
        for (const auto& line : cells) {
            os << prefix;
            for (std::size_t i = 0; i < keys.size(); ++i)
                os << (i ? "  " : "") << line[i] << std::string(width[i] - line[i].size(), ' ');
            os << "\n";
        }
        return;
    }
    for (const auto& item : arr) {
        if (is_scalar(item)) {
            os << prefix << "- " << scalar_text(item) << "\n";
        } else {
            os << prefix << "-\n";
            render_table(item, os, prefix + "  ");
        }
    }
}

void render_table(const Json& v, std::ostream& os, const std::string& prefix) {
    if (v.is_array()) {
        render_array(v, os, prefix);
        return;
    }
    if (!v.is_object()) {
        os << prefix << scalar_text(v) << "\n";
        return;
    }
    for (const auto& item : v.items()) {
        if (is_scalar(item.value())) {
            os << prefix << item.key() << ": " << scalar_text(item.value()) << "\n";
        } else if (item.value().empty()) {
            os << prefix << item.key() << ": "
               << (item.value().is_array() ? "[]" : "{}") << "\n";
        } else {
            os << prefix << item.key() << ":\n";
            render_table(item.value(), os, prefix + "  ");
        }
    }
}

void emit(const Json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        render_table(report, std::cout, "");
    }
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const frobstab::InputError&) {
        throw frobstab::InputError(std::string(flag) + ": expected \"num/den\" or integer, got \"" +
                                   text + "\"");
    }
}

std::uint64_t resolve_seed(bool seed_set, std::uint64_t seed_flag) {
    if (seed_set) return seed_flag;
    if (const char* env = std::getenv("FROBSTAB_SEED")) {
        try {
            std::size_t used = 0;
            const std::string text(env);
            const unsigned long long parsed = std::stoull(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return parsed;
        } catch (const std::exception&) {
            throw frobstab::InputError("FROBSTAB_SEED must be an unsigned integer");
        }
    }
    return 123456789ULL;
}

SlopeProfile load_profile(const std::string& path) {
    return frobstab::profile_from_json(frobstab::load_json_file(path));
}

VarietyContext load_ctx(const std::string& path) {
    return frobstab::ctx_from_json(frobstab::load_json_file(path));
}

Json stats_report(const SheafStats& stats) { return frobstab::to_json(stats); }

void force_banner(const std::string& what) {
    std::cerr << "WARNING: hypotheses not satisfied for " << what
              << "; computing anyway (--force)\n";
}

// One row of the bounds report; hypothesis-gated bounds are skipped (not
// errors) unless explicitly requested.
struct BoundRow {
    std::string name;
    Citation citation;
    std::vector<std::string> hypotheses;
    bool requested = false;
    bool inputs_ok = false;
    std::string missing_inputs;
    bool hypotheses_ok = false;
    std::string violated;
};

int run_bounds(const std::string& ctx_path, bool have_rank, std::int64_t rank,
               const std::string& mu_text, const std::string& instab_text, bool have_l, int l,
               const std::string& stats_path, const std::string& caps_path,
               std::vector<std::string> which, bool force, const std::string& format) {
    const VarietyContext ctx = load_ctx(ctx_path);
    SheafStats stats;
    stats.rank = rank;
    stats.slope = parse_rational_flag(mu_text, "--mu");
    stats.instability = parse_rational_flag(instab_text, "--instab");
    if (have_rank) stats.validate();

    std::vector<SheafStats> parts;
    if (!stats_path.empty())
        for (const auto& item : frobstab::load_json_file(stats_path))
            parts.push_back(frobstab::stats_from_json(item));
    std::vector<Rational> caps;
    if (!caps_path.empty())
        caps = frobstab::rational_list_from_json(frobstab::load_json_file(caps_path));

    const bool have_lmax = ctx.lmax_omega.has_value();
    const bool mu_nonneg = ctx.mu_omega.sign() >= 0;
    const bool mu_nonpos = ctx.mu_omega.sign() <= 0;

    std::vector<BoundRow> rows;
    {
        BoundRow r{"langer-gap", Citation::langer_gap, {}, false, have_rank && have_lmax, "", true, ""};
        if (!r.inputs_ok) r.missing_inputs = "--rank and context lmax_omega";
        rows.push_back(r);
    }
    {
        BoundRow r{"tensor", Citation::tensor, {}, false, !parts.empty() && have_lmax, "", true, ""};
        if (!r.inputs_ok) r.missing_inputs = "--stats file and context lmax_omega";
        rows.push_back(r);
    }
    {
        BoundRow r{"sun", Citation::sun_pushforward, {"mu_omega >= 0"}, false,
                   have_rank && !caps.empty(), "", mu_nonneg, ""};
        if (!r.inputs_ok) r.missing_inputs = "--rank and --caps file";
        if (!r.hypotheses_ok) r.violated = "mu_omega >= 0";
        rows.push_back(r);
    }
    {
        BoundRow r{"case-i", Citation::diim_minus, {"omega semistable", "mu_omega <= 0"}, false,
                   have_rank, "", ctx.omega_is_semistable() && mu_nonpos, ""};
        if (!r.inputs_ok) r.missing_inputs = "--rank";
        if (!r.hypotheses_ok) r.violated = "omega semistable and mu_omega <= 0";
        rows.push_back(r);
    }
    {
        BoundRow r{"case-ii", Citation::instab_dirim, {"mu_omega >= 0"}, false,
                   have_rank && have_lmax, "", mu_nonneg, ""};
        if (!r.inputs_ok) r.missing_inputs = "--rank and context lmax_omega";
        if (!r.hypotheses_ok) r.violated = "mu_omega >= 0";
        rows.push_back(r);
    }
    {
        BoundRow r{"instab-tl", Citation::instab_tl, {}, false, have_rank && have_lmax && have_l,
                   "", true, ""};
        if (!r.inputs_ok) r.missing_inputs = "--rank, --l and context lmax_omega";
        rows.push_back(r);
    }

    if (!which.empty()) {
        for (const auto& name : which) {
            auto it = std::find_if(rows.begin(), rows.end(),
                                   [&](const BoundRow& r) { return r.name == name; });
            if (it == rows.end())
                throw frobstab::InputError("unknown bound \"" + name + "\"");
            if (!it->inputs_ok)
                throw frobstab::InputError("bound " + name + " needs " + it->missing_inputs);
            it->requested = true;
        }
    } else {
        for (auto& r : rows) r.requested = r.inputs_ok && r.hypotheses_ok;
    }

    Json entries = Json::array();
    for (const auto& r : rows) {
        if (!r.requested) {
            if (which.empty() && r.inputs_ok && !r.hypotheses_ok) {
                Json e;
                e["name"] = r.name;
                e["citation"] = std::string(citation_tag(r.citation));
                e["hypotheses"] = r.hypotheses;
                e["hypotheses_satisfied"] = false;
                e["value"] = nullptr;
                e["skipped"] = "hypotheses not satisfied: " + r.violated;
                entries.push_back(std::move(e));
            }
            continue;
        }
        if (!r.hypotheses_ok && !force) {
            throw frobstab::HypothesisError("bound " + r.name +
                                            " requires " + r.violated +
                                            " (use --force to evaluate anyway)");
        }
        if (!r.hypotheses_ok) force_banner("bound " + r.name);
        Json e;
        e["name"] = r.name;
        e["citation"] = std::string(citation_tag(r.citation));
        e["hypotheses"] = r.hypotheses;
        e["hypotheses_satisfied"] = r.hypotheses_ok;
        if (r.name == "langer-gap") {
            e["value"] = frobstab::to_json(
                frobstab::bound_langer_gap(stats.rank, ctx.p, stats.instability, *ctx.lmax_omega));
        } else if (r.name == "tensor") {
            e["value"] = frobstab::to_json(frobstab::bound_tensor(parts, ctx.p, *ctx.lmax_omega));
        } else if (r.name == "sun") {
            e["value"] = frobstab::to_json(frobstab::bound_sun(ctx, stats.rank, caps, force));
        } else if (r.name == "case-i") {
            e["value"] = frobstab::to_json(frobstab::bound_pushforward_caseI(ctx, stats.rank, force));
        } else if (r.name == "case-ii") {
            const CaseIIBound bound = frobstab::bound_pushforward_caseII(ctx, stats, force);
            e["value"] = frobstab::to_json(bound.total);
            e["per_l"] = frobstab::to_json(bound.per_l);
        } else if (r.name == "instab-tl") {
            e["value"] = frobstab::to_json(frobstab::bound_instab_tl(
                static_cast<int>(stats.rank), ctx.p, l, stats.instability, *ctx.lmax_omega));
        }
        entries.push_back(std::move(e));
    }

    Json report;
    report["context"] = frobstab::to_json(ctx);
    if (have_rank) report["sheaf"] = stats_report(stats);
    report["bounds"] = std::move(entries);
    emit(report, format);
    return 0;
}

int run_check_zi(int n, int p, bool have_i, int i, const std::string& format) {
    Json verdicts = Json::array();
    if (have_i) {
        verdicts.push_back(frobstab::to_json(frobstab::check_zi_instability(n, p, i)));
    } else {
        if (n < 2) throw frobstab::InputError("check-zi: need n >= 2 (no i with 1 <= i <= n-1)");
        for (int j = 1; j <= n - 1; ++j)
            verdicts.push_back(frobstab::to_json(frobstab::check_zi_instability(n, p, j)));
    }
    Json report;
    report["n"] = n;
    report["p"] = p;
    report["citation"] = std::string(citation_tag(Citation::instzix));
    report["verdicts"] = std::move(verdicts);
    if (n >= 3) {
        Json z1;
        z1["assumptions"] = frobstab::z1_hn_assumptions();
        try {
            z1["polygon"] = frobstab::to_json(frobstab::z1_hn(n, p));
            z1["slope_order_violation"] = nullptr;
        } catch (const frobstab::SlopeOrderError& e) {
            z1["polygon"] = nullptr;
            z1["slope_order_violation"] = e.what();
        }
        report["z1"] = std::move(z1);
    } else {
        report["z1"] = nullptr;
    }
    emit(report, format);
    return 0;
}

int run_hnp(const std::string& profile_path, const std::string& compare_path,
            const std::string& format) {
    const SlopeProfile profile = frobstab::normalize(load_profile(profile_path));
    const auto stats = frobstab::profile_stats(profile);
    const HNPolygon poly = frobstab::polygon_of(profile);
    Json report;
    report["profile"] = frobstab::to_json(profile);
    Json st;
    st["mu"] = frobstab::to_json(stats.mu);
    st["mu_max"] = frobstab::to_json(stats.mu_max);
    st["mu_min"] = frobstab::to_json(stats.mu_min);
    st["instability"] = frobstab::to_json(stats.instability);
    report["stats"] = std::move(st);
    report["polygon"] = frobstab::to_json(poly);
    if (!compare_path.empty()) {
        const HNPolygon other = frobstab::polygon_of(frobstab::normalize(load_profile(compare_path)));
        Json cmp;
        cmp["citation"] = std::string(citation_tag(Citation::shatz));
        cmp["other_polygon"] = frobstab::to_json(other);
        cmp["dominates"] = frobstab::dominates(poly, other);
        cmp["dominated_by"] = frobstab::dominates(other, poly);
        cmp["dominates_same_endpoints"] = frobstab::dominates_same_endpoints(poly, other);
        cmp["dominated_by_same_endpoints"] = frobstab::dominates_same_endpoints(other, poly);
        report["compare"] = std::move(cmp);
    } else {
        report["compare"] = nullptr;
    }
    emit(report, format);
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"exact slope/instability calculator for Frobenius pushforwards,\n"
                 "truncated symmetric powers, and differential-form sheaves"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();

    int n = 1, p = 2, l = 0, r = 1, i = 1, m = 1;
    std::int64_t rank = 1;
    std::string mu_text = "0", instab_text = "0";
    std::string profile_path, compare_path, ctx_path, stats_path, caps_path;
    std::string grid = "small";
    std::vector<std::string> which;
    bool force = false;
    std::uint64_t seed_flag = 0;

    auto* rank_tl_cmd = app.add_subcommand("rank-tl", "dimension of one truncated symmetric power");
    rank_tl_cmd->add_option("--r", r, "rank of the underlying bundle")->required();
    rank_tl_cmd->add_option("--p", p, "characteristic")->required();
    rank_tl_cmd->add_option("--l", l, "power")->required();

    auto* decomp_cmd = app.add_subcommand("decomp-tl", "slope decomposition of a truncated power");
    decomp_cmd->add_option("--profile", profile_path, "profile JSON file")->required();
    decomp_cmd->add_option("--p", p, "characteristic")->required();
    decomp_cmd->add_option("--l", l, "power")->required();

    auto* instab_cmd = app.add_subcommand("instab-tl", "exact truncated-power instability and its cap");
    instab_cmd->add_option("--profile", profile_path, "profile JSON file")->required();
    instab_cmd->add_option("--p", p, "characteristic")->required();
    instab_cmd->add_option("--l", l, "power")->required();

    auto* bounds_cmd = app.add_subcommand("bounds", "instability bounds for a sheaf on a context");
    bounds_cmd->add_option("--ctx", ctx_path, "variety context JSON file")->required();
    auto* rank_opt = bounds_cmd->add_option("--rank", rank, "rank of E");
    bounds_cmd->add_option("--mu", mu_text, "slope of E");
    bounds_cmd->add_option("--instab", instab_text, "instability of E");
    auto* l_opt = bounds_cmd->add_option("--l", l, "truncated power for instab-tl");
    bounds_cmd->add_option("--stats", stats_path, "JSON array of tensor-factor stats");
    bounds_cmd->add_option("--caps", caps_path, "JSON array of per-l instability caps");
    bounds_cmd->add_option("--which", which, "evaluate only these bounds");
    bounds_cmd->add_flag("--force", force, "evaluate outside the stated hypotheses");

    auto* push_cmd = app.add_subcommand("pushforward", "rank/slope/degree of a Frobenius pushforward");
    push_cmd->add_option("--ctx", ctx_path, "variety context JSON file")->required();
    push_cmd->add_option("--rank", rank, "rank of E")->required();
    push_cmd->add_option("--mu", mu_text, "slope of E")->required();
    push_cmd->add_option("--m", m, "number of pushforwards")->capture_default_str();

    auto* forms_cmd = app.add_subcommand("forms", "rank/degree table of locally exact and closed forms");
    forms_cmd->add_option("--n", n, "dimension")->required();
    forms_cmd->add_option("--p", p, "characteristic")->required();

    auto* zi_cmd = app.add_subcommand("check-zi", "destabilization verdicts for closed-form sheaves");
    zi_cmd->add_option("--n", n, "dimension")->required();
    zi_cmd->add_option("--p", p, "characteristic")->required();
    auto* i_opt = zi_cmd->add_option("--i", i, "single form degree (default: all)");

    auto* hnp_cmd = app.add_subcommand("hnp", "polygon, stats, and dominance of slope profiles");
    hnp_cmd->add_option("--profile", profile_path, "profile JSON file")->required();
    hnp_cmd->add_option("--compare", compare_path, "second profile JSON file");

    auto* advisor_cmd = app.add_subcommand("advisor", "sufficient stability conclusions from flags");
    advisor_cmd->add_option("--ctx", ctx_path, "variety context JSON file")->required();
    bool e_strong = false, e_semi = false, mu_max_np = false;
    advisor_cmd->add_flag("--e-strongly-semistable", e_strong, "E is slope strongly semistable");
    advisor_cmd->add_flag("--e-semistable", e_semi, "E is slope semistable");
    advisor_cmd->add_flag("--mu-max-omega-nonpositive", mu_max_np,
                          "assert L_max(Omega^1) <= 0");

    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "run the built-in oracle suites");
    selfcheck_cmd->add_option("--grid", grid, "small or full")->capture_default_str();
    auto* seed_opt = selfcheck_cmd->add_option("--seed", seed_flag, "override FROBSTAB_SEED");

    // Accept the global --format after a subcommand name too.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    }

    if (rank_tl_cmd->parsed()) {
        const frobstab::BigInt computed = frobstab::rank_tl(r, p, l);
        const frobstab::BigInt oracle = frobstab::rank_tl_oracle(r, p, l);
        Json report;
        report["rank"] = computed.str();
        report["oracle"] = oracle.str();
        report["agrees"] = computed == oracle;
        emit(report, format);
        return 0;
    }
    if (decomp_cmd->parsed()) {
        emit(frobstab::to_json(frobstab::tl_decomposition(load_profile(profile_path), p, l)), format);
        return 0;
    }
    if (instab_cmd->parsed()) {
        const SlopeProfile profile = load_profile(profile_path);
        const auto [mu_max, mu_min] = frobstab::tl_extremes(profile, p, l);
        const Rational exact = mu_max - mu_min;
        const Rational cap = frobstab::bound_tl2(profile, p, l);
        Json report;
        report["p"] = p;
        report["l"] = l;
        report["mu_max"] = frobstab::to_json(mu_max);
        report["mu_min"] = frobstab::to_json(mu_min);
        report["instability"] = frobstab::to_json(exact);
        report["bound"] = frobstab::to_json(cap);
        report["citation"] = std::string(citation_tag(Citation::tl2));
        report["bound_respected"] = exact <= cap;
        emit(report, format);
        return 0;
    }
    if (bounds_cmd->parsed()) {
        return run_bounds(ctx_path, rank_opt->count() > 0, rank, mu_text, instab_text,
                          l_opt->count() > 0, l, stats_path, caps_path, which, force, format);
    }
    if (push_cmd->parsed()) {
        const VarietyContext ctx = load_ctx(ctx_path);
        SheafStats stats;
        stats.rank = rank;
        stats.slope = parse_rational_flag(mu_text, "--mu");
        stats.validate();
        Json report;
        report["context"] = frobstab::to_json(ctx);
        report["sheaf"] = stats_report(stats);
        Json push;
        push["m"] = m;
        push["slope"] = frobstab::to_json(frobstab::mu_pushforward(ctx, stats.slope, m));
        if (m == 1) {
            const auto full = frobstab::pushforward_stats(ctx, stats);
            push["rank"] = full.rank.str();
            push["degree"] = frobstab::to_json(full.degree);
        }
        report["pushforward"] = std::move(push);
        if (m == 1) {
            Json filt;
            filt["citation"] = std::string(citation_tag(Citation::canonical_filtration));
            Json layers = Json::array();
            for (const auto& layer : frobstab::canonical_filtration_ranks(ctx, stats.rank)) {
                Json row;
                row["l"] = layer.l;
                row["rank"] = layer.rank.str();
                row["slope_offset"] = frobstab::to_json(layer.slope_offset);
                layers.push_back(std::move(row));
            }
            filt["layers"] = std::move(layers);
            report["canonical_filtration"] = std::move(filt);
        }
        emit(report, format);
        return 0;
    }
    if (forms_cmd->parsed()) {
        emit(frobstab::to_json(frobstab::forms_recurrence(n, p)), format);
        return 0;
    }
    if (zi_cmd->parsed()) {
        return run_check_zi(n, p, i_opt->count() > 0, i, format);
    }
    if (hnp_cmd->parsed()) {
        return run_hnp(profile_path, compare_path, format);
    }
    if (advisor_cmd->parsed()) {
        const VarietyContext ctx = load_ctx(ctx_path);
        EFlags flags;
        flags.strongly_semistable = e_strong;
        flags.semistable = e_semi;
        Json advice = Json::array();
        for (const Advice& a : frobstab::stability_advisor(ctx, flags, mu_max_np)) {
            Json row;
            row["conclusion"] = a.conclusion;
            row["citation"] = std::string(citation_tag(a.citation));
            advice.push_back(std::move(row));
        }
        Json report;
        report["context"] = frobstab::to_json(ctx);
        Json in;
        in["e_strongly_semistable"] = e_strong;
        in["e_semistable"] = e_semi;
        in["mu_max_omega_nonpositive"] = mu_max_np;
        report["flags"] = std::move(in);
        report["advice"] = std::move(advice);
        emit(report, format);
        return 0;
    }
    if (selfcheck_cmd->parsed()) {
        const std::uint64_t seed = resolve_seed(seed_opt->count() > 0, seed_flag);
        emit(frobstab::to_json(frobstab::selfcheck(grid, seed)), format);
        return 0;
    }
    throw frobstab::InternalError("no subcommand dispatched");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const frobstab::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const frobstab::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
