#include "frobstab/serialize.hpp"

#include <fstream>

namespace frobstab {

namespace {

std::string bigint_str(const BigInt& x) { return x.str(); }

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int int_from_json(const nlohmann::json& j, const char* key) {
    const auto& v = field(j, key);
    if (!v.is_number_integer())
        throw InputError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

bool bool_from_json(const nlohmann::json& j, const char* key, bool fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean())
        throw InputError(std::string("field \"") + key + "\" must be a boolean");
    return v.get<bool>();
}

} // namespace

Json to_json(const Rational& x) { return Json(x.str()); }

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw InputError("rational must be a \"num/den\" string or an integer");
}

BigInt bigint_from_json(const nlohmann::json& j) {
    Rational x = rational_from_json(j);
    if (!x.is_integer()) throw InputError("expected an integer, got a non-integral rational");
    return x.numerator();
}

Json to_json(const SlopeProfile& profile) {
    Json blocks = Json::array();
    for (const auto& block : profile.blocks()) {
        Json b;
        b["rank"] = block.rank;
        b["slope"] = to_json(block.slope);
        blocks.push_back(std::move(b));
    }
    Json out;
    out["blocks"] = std::move(blocks);
    return out;
}

SlopeProfile profile_from_json(const nlohmann::json& j) {
    const auto& blocks = field(j, "blocks");
    if (!blocks.is_array()) throw InputError("\"blocks\" must be an array");
    std::vector<ProfileBlock> parsed;
    parsed.reserve(blocks.size());
    for (const auto& b : blocks) {
        ProfileBlock block;
        const auto& rank = field(b, "rank");
        if (!rank.is_number_integer())
            throw InputError("block \"rank\" must be an integer");
        block.rank = rank.get<std::int64_t>();
        block.slope = rational_from_json(field(b, "slope"));
        parsed.push_back(std::move(block));
    }
    return SlopeProfile(std::move(parsed));
}

Json to_json(const HNPolygon& polygon) {
    Json vertices = Json::array();
    for (const auto& [rank, height] : polygon.vertices)
        vertices.push_back(Json::array({rank, to_json(height)}));
    Json out;
    out["vertices"] = std::move(vertices);
    return out;
}

Json to_json(const TruncatedDecomposition& decomposition) {
    Json pieces = Json::array();
    for (const auto& [slope, rank] : decomposition.pieces) {
        Json piece;
        piece["slope"] = to_json(slope);
        piece["rank"] = bigint_str(rank);
        pieces.push_back(std::move(piece));
    }
    Json out;
    out["l"] = decomposition.l;
    out["p"] = decomposition.p;
    out["pieces"] = std::move(pieces);
    out["total_rank"] = bigint_str(decomposition.total_rank());
    return out;
}

Json to_json(const VarietyContext& ctx) {
    Json out;
    out["n"] = ctx.n;
    out["p"] = ctx.p;
    out["mu_omega"] = to_json(ctx.mu_omega);
    out["lmax_omega"] = ctx.lmax_omega ? Json(ctx.lmax_omega->str()) : Json(nullptr);
    out["i_omega"] = to_json(ctx.i_omega);
    out["omega_semistable"] = ctx.omega_semistable;
    out["omega_strongly_semistable"] = ctx.omega_strongly_semistable;
    return out;
}

VarietyContext ctx_from_json(const nlohmann::json& j) {
    VarietyContext ctx;
    ctx.n = int_from_json(j, "n");
    ctx.p = int_from_json(j, "p");
    ctx.mu_omega = rational_from_json(field(j, "mu_omega"));
    if (j.contains("lmax_omega") && !j.at("lmax_omega").is_null())
        ctx.lmax_omega = rational_from_json(j.at("lmax_omega"));
    if (j.contains("i_omega")) ctx.i_omega = rational_from_json(j.at("i_omega"));
    ctx.omega_semistable = bool_from_json(j, "omega_semistable", false);
    ctx.omega_strongly_semistable = bool_from_json(j, "omega_strongly_semistable", false);
    ctx.validate();
    return ctx;
}

Json to_json(const SheafStats& stats) {
    Json out;
    out["rank"] = stats.rank;
    out["slope"] = to_json(stats.slope);
    out["instability"] = to_json(stats.instability);
    return out;
}

SheafStats stats_from_json(const nlohmann::json& j) {
    SheafStats stats;
    const auto& rank = field(j, "rank");
    if (!rank.is_number_integer()) throw InputError("\"rank\" must be an integer");
    stats.rank = rank.get<std::int64_t>();
    stats.slope = rational_from_json(field(j, "slope"));
    if (j.contains("instability")) stats.instability = rational_from_json(j.at("instability"));
    stats.validate();
    return stats;
}

Json to_json(const FormsTable& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["i"] = row.i;
        r["rank_b"] = bigint_str(row.rank_b);
        r["rank_z"] = bigint_str(row.rank_z);
        r["degb_coeff"] = to_json(row.degb_coeff);
        r["degz_coeff"] = to_json(row.degz_coeff);
        rows.push_back(std::move(r));
    }
    Json out;
    out["n"] = table.n;
    out["p"] = table.p;
    out["rows"] = std::move(rows);
    return out;
}

Json to_json(const ZiVerdict& verdict) {
    Json out;
    out["n"] = verdict.n;
    out["p"] = verdict.p;
    out["i"] = verdict.i;
    out["mu_b_coeff"] = to_json(verdict.mu_b_coeff);
    out["mu_omega_i_coeff"] = to_json(verdict.mu_omega_i_coeff);
    out["exact_destabilizes"] = verdict.exact_destabilizes;
    out["paper_sufficient_lhs"] = to_json(verdict.paper_sufficient_lhs);
    out["paper_sufficient_holds"] = verdict.paper_sufficient_holds;
    out["exact_sufficient_lhs"] = to_json(verdict.exact_sufficient_lhs);
    out["exact_sufficient_holds"] = verdict.exact_sufficient_holds;
    out["sufficient_conflict"] = verdict.sufficient_conflict;
    out["in_claimed_range"] = verdict.in_claimed_range;
    return out;
}

std::vector<Rational> rational_list_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals");
    std::vector<Rational> xs;
    xs.reserve(j.size());
    for (const auto& v : j) xs.push_back(rational_from_json(v));
    return xs;
}

Json to_json(const std::vector<Rational>& xs) {
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(to_json(x));
    return out;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open JSON file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

} // namespace frobstab
