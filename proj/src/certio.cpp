#include "polysign/certio.hpp"

#include <fstream>
#include <stdexcept>
#include <utility>

#include "polysign/errors.hpp"
#include "polysign/rng.hpp"

namespace polysign {
namespace {

using nlohmann::json;

json rat_json(const Rational& q) { return rat_str(q); }

Rational rat_field(const json& j) {
    if (!j.is_string()) throw InvalidParameter("rational field must be text");
    return parse_rat(j.get<std::string>());
}

json witness_json(const SignChangeCertificate& sc) {
    json w = json::array();
    for (const auto& [lo, hi] : sc.witnesses)
        w.push_back(json::array({rat_json(lo), rat_json(hi)}));
    return json{{"count", sc.count},
                {"interval", json::array({rat_json(sc.interval_lo),
                                          rat_json(sc.interval_hi)})},
                {"effective", json::array({rat_json(sc.effective_lo),
                                           rat_json(sc.effective_hi)})},
                {"nudged", sc.nudged},
                {"witnesses", std::move(w)}};
}

json chain_json(const ChainReport& chain) {
    json links = json::array();
    for (const BoundReport& r : chain.links)
        links.push_back(json{{"name", r.name},
                             {"lhs", r.lhs},
                             {"rhs", r.rhs},
                             {"holds", r.holds},
                             {"margin", r.margin},
                             {"subdivisions", r.subdivisions},
                             {"tolerance", r.tolerance}});
    return json{{"all_hold", chain.all_hold},
                {"sign_changes", chain.sign_changes},
                {"closed_form_lower", chain.closed_form_lower},
                {"links", std::move(links)}};
}

} // namespace

std::string rat_str(const Rational& q) { return q.get_str(); }

Rational parse_rat(const std::string& s) { return parse_rational(s); }

json certificate_document(const ProblemInstance& inst, int m,
                          const CollisionCertificate& cert,
                          const SignChangeCertificate& sc,
                          const ChainReport& chain) {
    json weights = json::array();
    for (const Rational& w : inst.weights()) weights.push_back(rat_json(w));
    json delta = json::array();
    for (const Rational& dj : cert.delta.v) delta.push_back(rat_json(dj));

    return json{
        {"format", kCertificateFormat},
        {"format_version", kCertificateFormatVersion},
        {"tool",
         {{"name", kToolName}, {"version", kToolVersion},
          {"rng", SplitMix64::kName}}},
        {"instance",
         {{"n", inst.n()},
          {"M", rat_json(inst.M())},
          {"a", rat_json(inst.a())},
          {"weights", std::move(weights)}}},
        {"m", m},
        {"strategy", strategy_name(cert.strategy)},
        {"stats",
         {{"enumerated", cert.stats.enumerated},
          {"cells", cert.stats.cells},
          {"work", cert.stats.work}}},
        {"grid",
         {{"m", cert.grid.m},
          {"L", cert.grid.L.get_str()},
          {"N", cert.grid.N.get_str()},
          {"h", rat_json(cert.grid.h)}}},
        {"d1", cert.d1.to_string()},
        {"d2", cert.d2.to_string()},
        {"b", cert.b.to_string()},
        {"delta", std::move(delta)},
        {"sign_changes", witness_json(sc)},
        {"chain", chain_json(chain)}};
}

void save_json(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidParameter("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw InvalidParameter("write failed: " + path);
}

json load_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadCertificate("cannot open: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw BadCertificate("not a structured document: " +
                             std::string(e.what()));
    }
}

VerifyOutcome verify_certificate(const json& doc) {
    VerifyOutcome out;
    std::string check = "document-shape";
    auto fail = [&out](std::string name) {
        out.ok = false;
        out.failed_check = std::move(name);
        return out;
    };

    try {
        // document-shape: the fields this verifier consumes, with the right
        // JSON types.
        if (!doc.is_object() ||
            doc.value("format", std::string()) != kCertificateFormat ||
            doc.value("format_version", -1) != kCertificateFormatVersion ||
            !doc.contains("instance") || !doc["instance"].is_object() ||
            !doc.contains("m") || !doc["m"].is_number_integer() ||
            !doc.contains("grid") || !doc["grid"].is_object() ||
            !doc.contains("d1") || !doc["d1"].is_string() ||
            !doc.contains("d2") || !doc["d2"].is_string() ||
            !doc.contains("b") || !doc["b"].is_string() ||
            !doc.contains("delta") || !doc["delta"].is_array() ||
            !doc.contains("sign_changes") || !doc["sign_changes"].is_object() ||
            !doc.contains("strategy") || !doc["strategy"].is_string())
            return fail(check);
        out.passed.push_back(check);

        // instance-frame: weights in [1, M], window parameter in (0, 1/3].
        check = "instance-frame";
        const json& ji = doc["instance"];
        const int n = ji.at("n").get<int>();
        Rational M = rat_field(ji.at("M"));
        Rational a = rat_field(ji.at("a"));
        std::vector<Rational> weights;
        for (const json& w : ji.at("weights")) weights.push_back(rat_field(w));
        if (n < 1 || static_cast<int>(weights.size()) != n + 1)
            return fail(check);
        ProblemInstance inst(n, M, weights, a);
        out.passed.push_back(check);

        // selection-vectors: two distinct masks of the right length.
        check = "selection-vectors";
        SelectionVector d1 = SelectionVector::parse(doc["d1"].get<std::string>());
        SelectionVector d2 = SelectionVector::parse(doc["d2"].get<std::string>());
        if (static_cast<int>(d1.d.size()) != n + 1 ||
            static_cast<int>(d2.d.size()) != n + 1 || d1 == d2)
            return fail(check);
        out.passed.push_back(check);

        // selection-difference: the recorded sign pattern is exactly d1 - d2.
        check = "selection-difference";
        auto [b, P] = difference(d1, d2, inst);
        if (b.to_string() != doc["b"].get<std::string>()) return fail(check);
        out.passed.push_back(check);

        // grid-match: the recorded grid is the canonical one for (inst, m).
        check = "grid-match";
        const int m = doc["m"].get<int>();
        GridSpec fresh = GridSpec::make(inst, m);
        GridSpec grid;
        grid.m = doc["grid"].at("m").get<int>();
        grid.L = Integer(doc["grid"].at("L").get<std::string>());
        grid.N = Integer(doc["grid"].at("N").get<std::string>());
        grid.h = rat_field(doc["grid"].at("h"));
        if (grid.m != fresh.m || grid.L != fresh.L || grid.N != fresh.N ||
            grid.h != fresh.h)
            return fail(check);
        out.passed.push_back(check);

        // witness-signs: each recorded witness pair sits strictly inside the
        // window, ordered and disjoint, with strictly opposite signs of P at
        // its endpoints (exact evaluations).
        check = "witness-signs";
        const json& js = doc["sign_changes"];
        SignChangeCertificate sc;
        sc.count = js.at("count").get<int>();
        sc.interval_lo = rat_field(js.at("interval").at(0));
        sc.interval_hi = rat_field(js.at("interval").at(1));
        sc.effective_lo = rat_field(js.at("effective").at(0));
        sc.effective_hi = rat_field(js.at("effective").at(1));
        sc.nudged = js.at("nudged").get<bool>();
        for (const json& jw : js.at("witnesses"))
            sc.witnesses.emplace_back(rat_field(jw.at(0)), rat_field(jw.at(1)));
        if (!(sc.interval_lo == inst.window_lo() &&
              sc.interval_hi == inst.window_hi()))
            return fail(check);
        if (sc.effective_lo < sc.interval_lo || sc.effective_hi > sc.interval_hi)
            return fail(check);
        Rational prev = sc.effective_lo;
        for (const auto& [wl, wh] : sc.witnesses) {
            if (!(prev <= wl && wl < wh && wh <= sc.effective_hi))
                return fail(check);
            Rational pl = P.evaluate(wl), ph = P.evaluate(wh);
            if (!((pl < 0 && ph > 0) || (pl > 0 && ph < 0))) return fail(check);
            prev = wh;
        }
        out.passed.push_back(check);

        // sign-count: the recorded count matches both the witness list and a
        // fresh certified recount.
        check = "sign-count";
        SignChangeCertificate fresh_sc =
            count_sign_changes(P, inst.window_lo(), inst.window_hi());
        if (sc.count != static_cast<int>(sc.witnesses.size()) ||
            sc.count != fresh_sc.count)
            return fail(check);
        out.sign_changes = sc.count;
        out.passed.push_back(check);

        // chain: the full inequality chain on the document's own data (the
        // moment-gap link recomputes the deltas and compares them with the
        // recorded ones, so tampering there is caught by name).
        check = "chain";
        CollisionCertificate cert;
        cert.d1 = std::move(d1);
        cert.d2 = std::move(d2);
        cert.b = std::move(b);
        for (const json& jd : doc["delta"]) cert.delta.v.push_back(rat_field(jd));
        cert.grid = std::move(grid);
        cert.strategy = parse_strategy(doc["strategy"].get<std::string>());
        proof_chain_check(P, inst, m, cert, sc);
        out.passed.push_back(check);

        out.ok = true;
        return out;
    } catch (const ChainViolation& e) {
        return fail(e.what()); // names the first failing link
    } catch (const Error& e) {
        return fail(check + ": " + e.what());
    } catch (const json::exception&) {
        return fail(check);
    } catch (const std::invalid_argument&) {
        return fail(check);
    }
}

} // namespace polysign
