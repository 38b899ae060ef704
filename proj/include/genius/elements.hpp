#pragma once

#include <optional>
#include <string_view>

namespace genius {

struct Element {
    std::string_view symbol;
    int atomic_number;
    double mass;  // standard atomic weight, amu
    bool metal;
};

const Element* find_element(std::string_view symbol);

}  // namespace genius
