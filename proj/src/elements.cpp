#include "genius/elements.hpp"

#include <array>

namespace genius {

namespace {

// Metalloids (B, Si, Ge, As, Sb, Te, Po) are not flagged as metals.
constexpr std::array<Element, 94> kElements{{
    {"H", 1, 1.008, false},      {"He", 2, 4.0026, false},    {"Li", 3, 6.94, true},       {"Be", 4, 9.0122, true},
    {"B", 5, 10.81, false},      {"C", 6, 12.011, false},     {"N", 7, 14.007, false},     {"O", 8, 15.999, false},
    {"F", 9, 18.998, false},     {"Ne", 10, 20.180, false},   {"Na", 11, 22.990, true},    {"Mg", 12, 24.305, true},
    {"Al", 13, 26.982, true},    {"Si", 14, 28.085, false},   {"P", 15, 30.974, false},    {"S", 16, 32.06, false},
    {"Cl", 17, 35.45, false},    {"Ar", 18, 39.948, false},   {"K", 19, 39.098, true},     {"Ca", 20, 40.078, true},
    {"Sc", 21, 44.956, true},    {"Ti", 22, 47.867, true},    {"V", 23, 50.942, true},     {"Cr", 24, 51.996, true},
    {"Mn", 25, 54.938, true},    {"Fe", 26, 55.845, true},    {"Co", 27, 58.933, true},    {"Ni", 28, 58.693, true},
    {"Cu", 29, 63.546, true},    {"Zn", 30, 65.38, true},     {"Ga", 31, 69.723, true},    {"Ge", 32, 72.630, false},
    {"As", 33, 74.922, false},   {"Se", 34, 78.971, false},   {"Br", 35, 79.904, false},   {"Kr", 36, 83.798, false},
    {"Rb", 37, 85.468, true},    {"Sr", 38, 87.62, true},     {"Y", 39, 88.906, true},     {"Zr", 40, 91.224, true},
    {"Nb", 41, 92.906, true},    {"Mo", 42, 95.95, true},     {"Tc", 43, 98.0, true},      {"Ru", 44, 101.07, true},
    {"Rh", 45, 102.91, true},    {"Pd", 46, 106.42, true},    {"Ag", 47, 107.87, true},    {"Cd", 48, 112.41, true},
    {"In", 49, 114.82, true},    {"Sn", 50, 118.71, true},    {"Sb", 51, 121.76, false},   {"Te", 52, 127.60, false},
    {"I", 53, 126.90, false},    {"Xe", 54, 131.29, false},   {"Cs", 55, 132.91, true},    {"Ba", 56, 137.33, true},
    {"La", 57, 138.91, true},    {"Ce", 58, 140.12, true},    {"Pr", 59, 140.91, true},    {"Nd", 60, 144.24, true},
    {"Pm", 61, 145.0, true},     {"Sm", 62, 150.36, true},    {"Eu", 63, 151.96, true},    {"Gd", 64, 157.25, true},
    {"Tb", 65, 158.93, true},    {"Dy", 66, 162.50, true},    {"Ho", 67, 164.93, true},    {"Er", 68, 167.26, true},
    {"Tm", 69, 168.93, true},    {"Yb", 70, 173.05, true},    {"Lu", 71, 174.97, true},    {"Hf", 72, 178.49, true},
    {"Ta", 73, 180.95, true},    {"W", 74, 183.84, true},     {"Re", 75, 186.21, true},    {"Os", 76, 190.23, true},
    {"Ir", 77, 192.22, true},    {"Pt", 78, 195.08, true},    {"Au", 79, 196.97, true},    {"Hg", 80, 200.59, true},
    {"Tl", 81, 204.38, true},    {"Pb", 82, 207.2, true},     {"Bi", 83, 208.98, true},    {"Po", 84, 209.0, false},
    {"At", 85, 210.0, false},    {"Rn", 86, 222.0, false},    {"Fr", 87, 223.0, true},     {"Ra", 88, 226.0, true},
    {"Ac", 89, 227.0, true},     {"Th", 90, 232.04, true},    {"Pa", 91, 231.04, true},    {"U", 92, 238.03, true},
    {"Np", 93, 237.0, true},     {"Pu", 94, 244.0, true},
}};

}  // namespace

const Element* find_element(std::string_view symbol) {
    for (const auto& e : kElements)
        if (e.symbol == symbol) return &e;
    return nullptr;
}

}  // namespace genius
