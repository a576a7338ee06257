// Prints the weighted h*-polynomials of two polytopes, their product, and
// the h*-polynomial of the free sum both from the product and by counting.
//
//   freesum_demo                      # paper:P and paper:Q
//   freesum_demo polytopes/kite.json cyclotomic:6

#include <iostream>
#include <string>

#include "ehrhart/io.hpp"
#include "ehrhart/theory.hpp"

int main(int argc, char** argv) {
  using namespace ehrhart;
  const std::string a = argc > 1 ? argv[1] : "paper:P";
  const std::string b = argc > 2 ? argv[2] : "paper:Q";
  try {
    const auto p = load_polytope(a);
    const auto q = load_polytope(b);
    const FracPoly hp = weighted_hstar(p), hq = weighted_hstar(q);
    std::cout << "h~(" << a << ") = " << hp.to_string() << "   r = " << gorenstein_denominator(p) << "\n";
    std::cout << "h~(" << b << ") = " << hq.to_string() << "   r = " << gorenstein_denominator(q) << "\n";

    const FracPoly product = hp * hq;
    std::cout << "product      = " << product.to_string() << "\n";
    std::cout << "psi(product) = " << psi(product).to_string() << "\n";

    const auto pq = free_sum(p, q);
    std::cout << "counted h*   = " << hstar(pq).to_string() << "\n";
    std::cout << "h*(P) h*(Q)  = " << (hstar(p) * hstar(q)).to_string() << "\n";
    const BjmVerdict v = bjm_equality(p, q);
    std::cout << "h* multiplicative: " << (v.actual ? "yes" : "no") << "\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
