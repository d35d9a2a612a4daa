#ifndef POLYSIGN_CERTIO_HPP
#define POLYSIGN_CERTIO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "polysign/analytic.hpp"
#include "polysign/collider.hpp"
#include "polysign/rootcert.hpp"

namespace polysign {

inline constexpr const char* kToolName = "polysign";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kCertificateFormat = "polysign-certificate";
inline constexpr int kCertificateFormatVersion = 1;

/// Canonical "p/q" (or plain "p") text for a rational.
std::string rat_str(const Rational& q);

/// Inverse of rat_str; accepts any integer or fraction text that GMP parses.
/// Throws InvalidParameter on malformed input or a zero denominator.
Rational parse_rat(const std::string& s);

/// Self-contained certificate document: everything needed to re-verify the
/// construction from scratch (instance, both selection vectors, grid, exact
/// moment differences, sign-change witnesses) plus the chain report and
/// provenance of the run that produced it.
nlohmann::json certificate_document(const ProblemInstance& inst, int m,
                                    const CollisionCertificate& cert,
                                    const SignChangeCertificate& sc,
                                    const ChainReport& chain);

void save_json(const std::string& path, const nlohmann::json& doc);
nlohmann::json load_json(const std::string& path); // throws BadCertificate

struct VerifyOutcome {
    bool ok = false;
    std::string failed_check;        // first failing check; empty when ok
    std::vector<std::string> passed; // checks confirmed, in order
    int sign_changes = -1;
};

/// Re-derives everything the document claims from the instance and the two
/// selection vectors, trusting nothing else: shape and membership checks,
/// witness sign checks, a fresh sign-change count, and the full inequality
/// chain (which itself recomputes the grid, the moment differences, and the
/// norms, and compares them against the document's copies).
VerifyOutcome verify_certificate(const nlohmann::json& doc);

} // namespace polysign

#endif
