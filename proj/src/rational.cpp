#include "ringwalk/rational.hpp"

#include <cctype>

namespace ringwalk {

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw Error("malformed rational literal '" + text + "'");
    }
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(text));
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + text + "'");
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("malformed rational literal '" + text + "'");
    }
}

std::string rational_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int common_denominator(const std::vector<Rat>& values) {
    Int d = 1;
    for (const Rat& v : values) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den().get_mpz_t());
    return d;
}

} // namespace ringwalk
