#include "qcm/real.hpp"

#include <sstream>

namespace qcm {

std::string Real::str(std::size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Complex Complex::sqrt() const {
    // principal square root via half-angle identities
    mpfr_prec_t p = prec();
    Real r = abs();
    Real m = r.sqrt();
    if (r.is_zero()) return Complex(p);
    Real c = re / r;
    Real one(1.0, p), two(2.0, p);
    Real ch = ((one + c) / two).sqrt();
    Real sh = ((one - c) / two).sqrt();
    if (im.sign() < 0) sh = -sh;
    return {m * ch, m * sh};
}

std::string Complex::str(std::size_t digits) const {
    std::ostringstream os;
    os << re.str(digits) << (im.sign() < 0 ? " - " : " + ") << im.abs().str(digits) << "i";
    return os.str();
}

Complex pow_complex(Complex base, unsigned long e) {
    Complex r(base.prec());
    r.re = Real(1.0, base.prec());
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace qcm
