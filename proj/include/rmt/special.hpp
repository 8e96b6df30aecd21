#pragma once

namespace rmt {

struct BesselPair {
  double j;
  double jp;
};

struct AiryPair {
  double ai;
  double aip;
};

// J_nu(x) and J_nu'(x) for nu >= 0, x >= 0.
BesselPair special_bessel(double nu, double x);
double bessel_j(double nu, double x);
// J_nu(z) / (z/2)^nu, an even entire function of z.
double bessel_j_scaled(double nu, double z);
// J_nu'(z) / (z/2)^{nu-1}, also entire.
double bessel_jp_scaled(double nu, double z);

// int_0^a J_mu(s) ds, mu > -1.
double bessel_integral(double mu, double a);
// int_0^a J_nu(s)/s ds, nu > 0.
double bessel_integral_over_s(double nu, double a);

AiryPair special_airy(double x);
double airy_ai(double x);
// int_x^inf Ai(s) ds
double airy_tail(double x);
// int_{-inf}^x Ai(s) ds
double airy_head(double x);

// Sine integral Si(x) = int_0^x sin(t)/t dt.
double sine_integral(double x);

}  // namespace rmt
