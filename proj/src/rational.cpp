#include "haargreedy/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace haargreedy {

Rational rational_from_string(const std::string& text) {
    std::string trimmed;
    trimmed.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    }
    if (trimmed.empty()) throw std::invalid_argument("empty rational literal");
    if (trimmed[0] == '+') trimmed.erase(trimmed.begin());  // set_str rejects '+'
    if (trimmed.empty()) throw std::invalid_argument("empty rational literal");

    // mpq set_str is permissive about some forms we do not want (e.g. "0x").
    // Accept only [-]digits[/digits].
    std::size_t pos = trimmed[0] == '-' ? 1 : 0;
    bool seen_digit = false;
    bool seen_slash = false;
    bool digit_after_slash = false;
    for (; pos < trimmed.size(); ++pos) {
        char c = trimmed[pos];
        if (c == '/') {
            if (seen_slash || !seen_digit) {
                throw std::invalid_argument("malformed rational literal: " + text);
            }
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digit_after_slash : seen_digit) = true;
        } else {
            throw std::invalid_argument("malformed rational literal: " + text);
        }
    }
    if (!seen_digit || (seen_slash && !digit_after_slash)) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }

    Rational value;
    if (value.set_str(trimmed, 10) != 0) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
    if (value.get_den() == 0) {
        throw std::invalid_argument("zero denominator in rational literal: " + text);
    }
    value.canonicalize();
    return value;
}

std::string fraction_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string decimal_string(const Rational& value, int significant_digits) {
    if (significant_digits < 1) throw std::invalid_argument("significant_digits < 1");
    if (value == 0) {
        std::string zeros(static_cast<std::size_t>(significant_digits - 1), '0');
        return "0." + zeros + "e+00";
    }
    mpz_class num = abs(value.get_num());
    mpz_class den = value.get_den();

    // Decimal exponent: number of digits of num/den minus one, corrected by
    // one exact comparison against a power of ten.
    long exponent = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
                    static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    mpz_class pow10;
    auto at_least_pow10 = [&](long e) {
        // num/den >= 10^e ?
        if (e >= 0) {
            mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(e));
            return num >= den * pow10;
        }
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-e));
        return num * pow10 >= den;
    };
    while (!at_least_pow10(exponent)) --exponent;
    while (at_least_pow10(exponent + 1)) ++exponent;

    // digits = round(num/den * 10^{sig-1-exponent}), half away from zero.
    long shift = significant_digits - 1 - exponent;
    mpz_class scaled_num = num;
    mpz_class scaled_den = den;
    if (shift >= 0) {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled_num *= pow10;
    } else {
        mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled_den *= pow10;
    }
    mpz_class digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);
    mpz_class cap;
    mpz_ui_pow_ui(cap.get_mpz_t(), 10, static_cast<unsigned long>(significant_digits));
    if (digits >= cap) {
        digits /= 10;
        ++exponent;
    }

    std::string digit_str = digits.get_str();
    while (static_cast<int>(digit_str.size()) < significant_digits) {
        digit_str.insert(digit_str.begin(), '0');
    }
    std::string out;
    if (value < 0) out.push_back('-');
    out.push_back(digit_str[0]);
    out.push_back('.');
    out.append(digit_str.begin() + 1, digit_str.end());
    out.push_back('e');
    out.push_back(exponent < 0 ? '-' : '+');
    long abs_exp = exponent < 0 ? -exponent : exponent;
    std::string exp_str = std::to_string(abs_exp);
    if (exp_str.size() < 2) exp_str.insert(exp_str.begin(), '0');
    out += exp_str;
    return out;
}

Rational pow2(long exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2,
                  static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return Rational(p);
    Rational r(1);
    r /= Rational(p);
    return r;
}

}  // namespace haargreedy
