#pragma once

#include <array>
#include <cstddef>

// Gauss-Legendre nodes/weights on [-1, 1].
namespace lqw::detail {

struct GLPoint {
  double x;
  double w;
};

inline constexpr std::array<GLPoint, 6> kGL6 = {{
    {-9.32469514203152050e-01, 1.71324492379169746e-01},
    {-6.61209386466264482e-01, 3.60761573048138939e-01},
    {-2.38619186083196932e-01, 4.67913934572691370e-01},
    {2.38619186083196932e-01, 4.67913934572691370e-01},
    {6.61209386466264482e-01, 3.60761573048138939e-01},
    {9.32469514203152050e-01, 1.71324492379169746e-01},
}};

inline constexpr std::array<GLPoint, 12> kGL12 = {{
    {-9.81560634246719244e-01, 4.71753363865120220e-02},
    {-9.04117256370474798e-01, 1.06939325995318885e-01},
    {-7.69902674194304693e-01, 1.60078328543346110e-01},
    {-5.87317954286617483e-01, 2.03167426723065647e-01},
    {-3.67831498998180184e-01, 2.33492536538354639e-01},
    {-1.25233408511468913e-01, 2.49147045813402690e-01},
    {1.25233408511468913e-01, 2.49147045813402690e-01},
    {3.67831498998180184e-01, 2.33492536538354639e-01},
    {5.87317954286617483e-01, 2.03167426723065647e-01},
    {7.69902674194304693e-01, 1.60078328543346110e-01},
    {9.04117256370474798e-01, 1.06939325995318885e-01},
    {9.81560634246719244e-01, 4.71753363865120220e-02},
}};

inline constexpr std::array<GLPoint, 16> kGL16 = {{
    {-9.89400934991649939e-01, 2.71524594117540374e-02},
    {-9.44575023073232600e-01, 6.22535239386477063e-02},
    {-8.65631202387831755e-01, 9.51585116824925914e-02},
    {-7.55404408355002999e-01, 1.24628971255534030e-01},
    {-6.17876244402643771e-01, 1.49595988816576764e-01},
    {-4.58016777657227370e-01, 1.69156519395002619e-01},
    {-2.81603550779258915e-01, 1.82603415044923612e-01},
    {-9.50125098376374544e-02, 1.89450610455068585e-01},
    {9.50125098376374544e-02, 1.89450610455068585e-01},
    {2.81603550779258915e-01, 1.82603415044923612e-01},
    {4.58016777657227370e-01, 1.69156519395002619e-01},
    {6.17876244402643771e-01, 1.49595988816576764e-01},
    {7.55404408355002999e-01, 1.24628971255534030e-01},
    {8.65631202387831755e-01, 9.51585116824925914e-02},
    {9.44575023073232600e-01, 6.22535239386477063e-02},
    {9.89400934991649939e-01, 2.71524594117540374e-02},
}};

inline constexpr std::array<GLPoint, 32> kGL32 = {{
    {-9.97263861849481570e-01, 7.01861000946929839e-03},
    {-9.85611511545268382e-01, 1.62743947309059653e-02},
    {-9.64762255587506390e-01, 2.53920653092624266e-02},
    {-9.34906075937739667e-01, 3.42738629130216257e-02},
    {-8.96321155766052202e-01, 4.28358980222264263e-02},
    {-8.49367613732569970e-01, 5.09980592623762441e-02},
    {-7.94483795967942386e-01, 5.86840934785357038e-02},
    {-7.32182118740289711e-01, 6.58222227763617523e-02},
    {-6.63044266930215231e-01, 7.23457941088484491e-02},
    {-5.87715757240762304e-01, 7.81938957870703111e-02},
    {-5.06899908932229359e-01, 8.33119242269468457e-02},
    {-4.21351276130635333e-01, 8.76520930044039082e-02},
    {-3.31868602282127667e-01, 9.11738786957638631e-02},
    {-2.39287362252137065e-01, 9.38443990808045664e-02},
    {-1.44471961582796488e-01, 9.56387200792748332e-02},
    {-4.83076656877383104e-02, 9.65400885147278121e-02},
    {4.83076656877383104e-02, 9.65400885147278121e-02},
    {1.44471961582796488e-01, 9.56387200792748332e-02},
    {2.39287362252137065e-01, 9.38443990808045664e-02},
    {3.31868602282127667e-01, 9.11738786957638631e-02},
    {4.21351276130635333e-01, 8.76520930044039082e-02},
    {5.06899908932229359e-01, 8.33119242269468457e-02},
    {5.87715757240762304e-01, 7.81938957870703111e-02},
    {6.63044266930215231e-01, 7.23457941088484491e-02},
    {7.32182118740289711e-01, 6.58222227763617523e-02},
    {7.94483795967942386e-01, 5.86840934785357038e-02},
    {8.49367613732569970e-01, 5.09980592623762441e-02},
    {8.96321155766052202e-01, 4.28358980222264263e-02},
    {9.34906075937739667e-01, 3.42738629130216257e-02},
    {9.64762255587506390e-01, 2.53920653092624266e-02},
    {9.85611511545268382e-01, 1.62743947309059653e-02},
    {9.97263861849481570e-01, 7.01861000946929839e-03},
}};

// Integrate f over [a, b] with an n-point rule.
template <std::size_t N, typename F>
double gauss(const std::array<GLPoint, N>& rule, double a, double b, F&& f) {
  double mid = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double acc = 0.0;
  for (const auto& p : rule) acc += p.w * f(mid + half * p.x);
  return acc * half;
}

}  // namespace lqw::detail
