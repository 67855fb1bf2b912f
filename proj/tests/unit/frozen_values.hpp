#pragma once

// Generated by tests/oracles/gen_values.py (mpmath, 40 digits).

#include <complex>

namespace frozen {

using cplx = std::complex<double>;

struct Pair { cplx s; cplx value; };
struct IncGamma { cplx s; cplx z; cplx value; };
struct Pair2 { cplx s; cplx v1; cplx v2; };

inline const Pair log_gamma[] = {
    {{2.5, 0.0}, {2.8468287047291916e-1, 0.0}},
    {{5.0e-1, 1.4e+1}, {-2.107221004192388e+1, 2.2949779692295985e+1}},
    {{-3.2999999999999998, 2.0}, {-6.1243017713429498, -9.1780280233064457}},
    {{8.0000000000000004e-1, 1.0e+3}, {-1.5678050616859973e+3, 5.9082265145468415e+3}},
    {{-5.0e-1, -4.0e+1}, {-6.5601872111602248e+1, -1.059729241933948e+2}},
    {{3.0e+1, 7.0}, {7.0434229058303228e+1, 2.3755658204970938e+1}},
    {{1.0e-3, 1.0000000000000001e-1}, {2.2937728232411105, -1.6179562974243639}},
};

/// g(s, z) = z^{-s} Gamma(s, z).
inline const IncGamma tail[] = {
    {{8.0000000000000004e-1, 1.0e+1}, {5.0e-1, 0.0}, {-1.8765884314898854e-3, 6.0898886973284009e-2}},
    {{2.5, 0.0}, {3.0, 0.0}, {2.6113499807566211e-2, 0.0}},
    {{-6.9999999999999996e-1, 3.0}, {1.2, 0.0}, {5.5831955839720386e-2, 6.8034954611463407e-2}},
    {{5.0e-1, 1.0e+2}, {4.0e+1, 0.0}, {1.464098533919127e-20, 3.6809036819976691e-20}},
    {{1.5, -2.0e+1}, {2.0, 5.0}, {5.2471988369623623e-3, -1.3929653240415708e-3}},
    {{2.9999999999999999e-1, 3.0e+2}, {1.0e-2, 2.5e+2}, {5.6692864371565642e-2, -1.2776040650277494e-1}},
    {{-2.2000000000000002, 1.0}, {4.0, -1.0}, {7.3597116680444888e-4, 2.4764324528956889e-3}},
    {{6.9999999999999996e-1, 5.0e+1}, {6.0e+1, 1.0}, {1.0786530129483779e-28, -3.5677546108275808e-29}},
};

/// E(s, x^2 + y^2) = 4 zeta(s) beta(s).
inline const Pair sum_two_squares[] = {
    {{2.0, 0.0}, {6.0268120396919401, 0.0}},
    {{5.0e-1, 1.4e+1}, {6.9163790684949205e-1, -5.1535904257067422e-1}},
    {{8.0000000000000004e-1, 1.0e+1}, {2.3954193296990585, -2.0238087083816905}},
    {{1.5, -3.0e+1}, {2.9389376799515742, 4.9393863013434112e-1}},
    {{2.9999999999999999e-1, 1.0e+2}, {-7.3861807296269376, -2.4082258488322301e+1}},
    {{7.5e-1, 5.0e+2}, {1.814321815803114, -1.0537404048344234e+1}},
    {{-5.0e-1, 5.0}, {6.0125831195301137, -4.7818499847645176}},
    {{2.5, 1.0e+3}, {3.7104371176173129, -6.6111659573484851e-1}},
};

/// E(s, (1,0,5)) and E(s, (2,2,3)).
inline const Pair2 disc_m20[] = {
    {{2.0, 0.0}, {2.5024222413486569, 0.0}, {1.2086915461455844, 0.0}},
    {{5.0e-1, 1.4e+1}, {6.7758955597068989, 5.2580376582788145}, {-6.9293384797066746, -5.3771080667061227}},
    {{8.0000000000000004e-1, 1.0e+1}, {2.0796904734127256, -1.5610462928960158e-1}, {1.6658354365012211, -1.3772377190304895e-2}},
    {{1.5, -3.0e+1}, {1.2065518709728137, -2.8869199841509821e-1}, {2.7521911224699419e-2, 1.3120600039619243}},
    {{2.9999999999999999e-1, 1.0e+2}, {1.2377796187251704e+1, 3.8669801774851759}, {7.3246436854191088, 3.1223713827612754}},
    {{7.5e-1, 5.0e+2}, {3.126069756466921, 7.5937849438293217e-1}, {-2.4119705740908948, -2.0878345766912891}},
};

}  // namespace frozen
