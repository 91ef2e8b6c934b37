#include "itersum/scalar.hpp"

#include "itersum/errors.hpp"

namespace itersum {

Scalar parse_scalar(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty scalar");
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0)
        throw ParseError("bad scalar: '" + std::string(text) + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string render_scalar(const Scalar& s) {
    if (s.get_den() == 1) return s.get_num().get_str();
    return s.get_num().get_str() + "/" + s.get_den().get_str();
}

mpz_class floor_scalar(const Scalar& s) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return q;
}

mpz_class ceil_scalar(const Scalar& s) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return q;
}

}  // namespace itersum
