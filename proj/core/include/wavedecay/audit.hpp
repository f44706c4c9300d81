#ifndef WAVEDECAY_AUDIT_HPP
#define WAVEDECAY_AUDIT_HPP

#include <string>
#include <vector>

namespace wavedecay {

/// One audited inequality or identity. The pass flag is a pure function of
/// the stored numbers: pass iff lhs <= rhs + rel_slack*|rhs| + abs_slack.
struct AuditEntry {
    std::string name;
    std::string anchor;  // stable identifier of the audited statement
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_slack = 0.0;
    double abs_slack = 0.0;
    double margin = 0.0;  // slacked rhs minus lhs
    bool pass = false;

    static AuditEntry bound(std::string name, std::string anchor, double lhs, double rhs,
                            double rel_slack, double abs_slack = 0.0)
    {
        AuditEntry e;
        e.name = std::move(name);
        e.anchor = std::move(anchor);
        e.lhs = lhs;
        e.rhs = rhs;
        e.rel_slack = rel_slack;
        e.abs_slack = abs_slack;
        e.margin = rhs + rel_slack * std::abs(rhs) + abs_slack - lhs;
        e.pass = e.margin >= 0.0;
        return e;
    }
};

struct AuditReport {
    std::vector<AuditEntry> entries;

    bool all_pass() const
    {
        for (const AuditEntry& e : entries)
            if (!e.pass)
                return false;
        return true;
    }
};

} // namespace wavedecay

#endif
