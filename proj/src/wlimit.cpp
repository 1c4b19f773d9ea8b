#include "grigrow/wlimit.hpp"

namespace grigrow::wlimit {

std::string schedule_json(const Schedule& s) {
    std::ostringstream os;
    os << "{\"schema_version\":1,\"epsilon\":[";
    for (std::size_t i = 0; i < s.epsilon.size(); ++i)
        os << (i ? "," : "") << '"' << s.epsilon[i].str() << '"';
    os << "],\"m\":[";
    for (std::size_t i = 0; i < s.m.size(); ++i) os << (i ? "," : "") << s.m[i];
    os << "],\"n\":[";
    for (std::size_t i = 0; i < s.n.size(); ++i) os << (i ? "," : "") << s.n[i];
    os << "],\"complete\":" << (s.complete ? "true" : "false") << ",\"certificates\":[";
    for (std::size_t i = 0; i < s.certificates.size(); ++i) {
        if (i) os << ',';
        os << '"';
        for (char c : s.certificates[i]) {
            if (c == '"' || c == '\\') os << '\\';
            os << c;
        }
        os << '"';
    }
    os << "]}";
    return os.str();
}

}  // namespace grigrow::wlimit
