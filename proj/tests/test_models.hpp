#pragma once

#include "bgmix/mixture.hpp"

// Simulation ground-truth models shared by tests and the acceptance suite.
namespace testmodels {

using bgmix::Component;
using bgmix::Family;
using bgmix::MixtureSpec;

// 0.85 N(0,1) + 0.15 N(3,1)
inline MixtureSpec s1() {
    MixtureSpec m;
    m.components = {{Family::Normal, 0.0, 1.0, 0.85}, {Family::Normal, 3.0, 1.0, 0.15}};
    return m;
}

// 0.95 N(0,1) + 0.05 N(3,1)
inline MixtureSpec s2() {
    MixtureSpec m;
    m.components = {{Family::Normal, 0.0, 1.0, 0.95}, {Family::Normal, 3.0, 1.0, 0.05}};
    return m;
}

// 0.85 N(0,1) + 0.10 N(2.5,0.75) + 0.05 N(-2.5,0.75)
inline MixtureSpec s3() {
    MixtureSpec m;
    m.components = {{Family::Normal, 0.0, 1.0, 0.85},
                    {Family::Normal, 2.5, 0.75, 0.10},
                    {Family::Normal, -2.5, 0.75, 0.05}};
    return m;
}

// 0.85 N(0,1) + 0.10 N(2.5,0.75) + 0.05 N(5,0.75)
inline MixtureSpec s4() {
    MixtureSpec m;
    m.components = {{Family::Normal, 0.0, 1.0, 0.85},
                    {Family::Normal, 2.5, 0.75, 0.10},
                    {Family::Normal, 5.0, 0.75, 0.05}};
    return m;
}

// 0.85 t_6 + 0.15 N(3,1)
inline MixtureSpec s5() {
    MixtureSpec m;
    m.components = {{Family::StudentT, 6.0, 0.0, 0.85}, {Family::Normal, 3.0, 1.0, 0.15}};
    return m;
}

// 0.85 Exp(1) + 0.15 Gamma(50, 1/10)
inline MixtureSpec m1() {
    MixtureSpec m;
    m.components = {{Family::Exponential, 1.0, 0.0, 0.85}, {Family::Gamma, 50.0, 0.1, 0.15}};
    return m;
}

// 0.95 Exp(1) + 0.05 Gamma(50, 1/10)
inline MixtureSpec m2() {
    MixtureSpec m;
    m.components = {{Family::Exponential, 1.0, 0.0, 0.95}, {Family::Gamma, 50.0, 0.1, 0.05}};
    return m;
}

inline MixtureSpec l1() { return s1(); }
inline MixtureSpec l2() { return s2(); }
inline MixtureSpec l3() { return s3(); }
inline MixtureSpec l4() { return s4(); }
inline MixtureSpec l5() { return s5(); }

inline MixtureSpec std_normal() { return MixtureSpec::normal(0.0, 1.0); }

} // namespace testmodels
