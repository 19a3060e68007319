// Generated by tools/gen_exp_rational.py. Do not edit.
//
// Best uniform rational approximation of exp(-s) on [0, inf), type (r - 1, r)
// unless noted, in partial-fraction form  a0 + sum_j a_j / (1 + b_j s).
#pragma once

#include <array>
#include <complex>
#include <span>

namespace specbasis::detail {

struct ExpRationalTerm {
  double weight_re, weight_im;
  double node_re, node_im;
};

struct ExpRationalEntry {
  int degree;
  double minimax_error;
  double constant;
  std::span<const ExpRationalTerm> terms;
};

inline constexpr std::array<ExpRationalTerm, 3> kExpRational3 = {{
    {1.0445126628308886, 0.0, 7.6000731638996445e-1, 0.0},
    {-2.1799659861480877e-2, -2.7548066815888751e-1, 2.7631243729817374e-2, 4.2326405181760627e-1},
    {-2.1799659861480877e-2, 2.7548066815888751e-1, 2.7631243729817374e-2, -4.2326405181760627e-1},
}};

inline constexpr std::array<ExpRationalTerm, 4> kExpRational4 = {{
    {-1.1452934407188945e-1, -3.7920889575398980e-2, -3.0424910925181625e-2, 2.7404418238971350e-1},
    {-1.1452934407188945e-1, 3.7920889575398980e-2, -3.0424910925181625e-2, -2.7404418238971350e-1},
    {6.1448137492604296e-1, -7.1819267068683748e-1, 4.1256370529405186e-1, 3.2146789715431532e-1},
    {6.1448137492604296e-1, 7.1819267068683748e-1, 4.1256370529405186e-1, -3.2146789715431532e-1},
}};

inline constexpr std::array<ExpRationalTerm, 5> kExpRational5 = {{
    {1.4772974738078732, 0.0, 4.7128543341499167e-1, 0.0},
    {-3.1409131274927268e-2, 3.9704821802880290e-2, -4.2789416520815674e-2, 1.9586662635994879e-1},
    {-3.1409131274927268e-2, -3.9704821802880290e-2, -4.2789416520815674e-2, -1.9586662635994879e-1},
    {-2.0723452133741689e-1, -6.3198029005074312e-1, 1.8481796371447513e-1, 3.1147103629460576e-1},
    {-2.0723452133741689e-1, 6.3198029005074312e-1, 1.8481796371447513e-1, -3.1147103629460576e-1},
}};

inline constexpr std::array<ExpRationalTerm, 6> kExpRational6 = {{
    {1.1278495652341677e-2, 1.7246982302756709e-2, -4.3847846491381873e-2, 1.4968910463673555e-1},
    {1.1278495652341677e-2, -1.7246982302756709e-2, -4.3847846491381873e-2, -1.4968910463673555e-1},
    {-4.0668123002482490e-1, -5.9262406668538992e-2, 7.9921988822330173e-2, 2.5330368007710192e-1},
    {-4.0668123002482490e-1, 5.9262406668538992e-2, 7.9921988822330173e-2, -2.5330368007710192e-1},
    {8.9540219286088871e-1, -1.2967298998373806, 3.3730853664016383e-1, 1.6851048645041491e-1},
    {8.9540219286088871e-1, 1.2967298998373806, 3.3730853664016383e-1, -1.6851048645041491e-1},
}};

inline constexpr std::array<ExpRationalTerm, 7> kExpRational7 = {{
    {2.3927829250140315, 0.0, 3.4287245939869941e-1, 0.0},
    {7.8811208787705863e-3, -2.2178595279346818e-3, -4.1756755745869803e-2, 1.1984262285379751e-1},
    {7.8811208787705863e-3, 2.2178595279346818e-3, -4.1756755745869803e-2, -1.1984262285379751e-1},
    {-1.2360817368269438e-1, 1.9811559203266068e-1, 3.0976603303535352e-2, 2.0278264387757505e-1},
    {-1.2360817368269438e-1, -1.9811559203266068e-1, 3.0976603303535352e-2, -2.0278264387757505e-1},
    {-5.8066435186238882e-1, -1.2274932395041566, 2.0997808119860264e-1, 2.0838179144398392e-1},
    {-5.8066435186238882e-1, 1.2274932395041566, 2.0997808119860264e-1, -2.0838179144398392e-1},
}};

inline constexpr std::array<ExpRationalTerm, 8> kExpRational8 = {{
    {5.7399269509715196e-5, -3.1883957438047973e-3, -3.8880195388496630e-2, 9.9231411631331180e-2},
    {5.7399269509715196e-5, 3.1883957438047973e-3, -3.8880195388496630e-2, -9.9231411631331180e-2},
    {7.3609088653264717e-2, 1.0080918902786366e-1, 6.8326975850585110e-3, 1.6479427285019738e-1},
    {7.3609088653264717e-2, -1.0080918902786366e-1, 6.8326975850585110e-3, -1.6479427285019738e-1},
    {-1.0217252901572509, -2.8972075866153970e-2, 1.2602723022952659e-1, 1.9898093408772142e-1},
    {-1.0217252901572509, 2.8972075866153970e-2, 1.2602723022952659e-1, -1.9898093408772142e-1},
    {1.4480587960448409, -2.3624630920066984, 2.7462678774710049e-1, 1.0206289887109971e-1},
    {1.4480587960448409, 2.3624630920066984, 2.7462678774710049e-1, -1.0206289887109971e-1},
}};

inline constexpr std::array<ExpRationalTerm, 9> kExpRational9 = {{
    {4.1603876711078669, 0.0, 2.6975499180141409e-1, 0.0},
    {-1.1668220907510517e-3, -3.6201344224396745e-4, -3.5973599758472855e-2, 8.4269976621353966e-2},
    {-1.1668220907510517e-3, 3.6201344224396745e-4, -3.5973599758472855e-2, -8.4269976621353966e-2},
    {6.1331060292300925e-2, -1.6961557537398595e-2, -5.6422511177307393e-3, 1.3665573461647164e-1},
    {6.1331060292300925e-2, 1.6961557537398595e-2, -5.6422511177307393e-3, -1.3665573461647164e-1},
    {-3.1139578980875766e-1, 6.2651863904765584e-1, 7.4705924369151132e-2, 1.7669752502332015e-1},
    {-3.1139578980875766e-1, -6.2651863904765584e-1, 7.4705924369151132e-2, -1.7669752502332015e-1},
    {-1.3289622832835234, -2.3321733877779248, 1.9910238457800446e-1, 1.4380577939800718e-1},
    {-1.3289622832835234, 2.3321733877779248, 1.9910238457800446e-1, -1.4380577939800718e-1},
}};

inline constexpr std::array<ExpRationalTerm, 10> kExpRational10 = {{
    {-2.5143331494138780e-4, 3.8700217937630856e-4, -3.3277051416325763e-2, 7.2981858780645681e-2},
    {-2.5143331494138780e-4, -3.8700217937630856e-4, -3.3277051416325763e-2, -7.2981858780645681e-2},
    {2.3465203808709604e-3, -3.1131098220261795e-2, -1.2259110650230753e-2, 1.1552072610521915e-1},
    {2.3465203808709604e-3, 3.1131098220261795e-2, -1.2259110650230753e-2, -1.1552072610521915e-1},
    {2.8821575178155941e-1, 3.3997356011119553e-1, 4.3390144946347234e-2, 1.5377599986551136e-1},
    {2.8821575178155941e-1, -3.3997356011119553e-1, 4.3390144946347234e-2, -1.5377599986551136e-1},
    {-2.2891056876890542, 1.1821866698887431e-1, 1.3885740368437031e-1, 1.5239395761360769e-1},
    {-2.2891056876890542, -1.1821866698887431e-1, 1.3885740368437031e-1, -1.5239395761360769e-1},
    {2.4987948487704408, -4.4012869085163812, 2.2915267754861597e-1, 6.8047359859240790e-2},
    {2.4987948487704408, 4.4012869085163812, 2.2915267754861597e-1, -6.8047359859240790e-2},
}};

inline constexpr std::array<ExpRationalTerm, 11> kExpRational11 = {{
    {7.5578967177239845, 0.0, 2.2243842741287155e-1, 0.0},
    {1.1428121660700808e-4, 1.2887065207044168e-4, -3.0851388300581804e-2, 6.4199818641817193e-2},
    {1.1428121660700808e-4, -1.2887065207044168e-4, -3.0851388300581804e-2, -6.4199818641817193e-2},
    {-1.3618751018973152e-2, -5.8863509637303457e-3, -1.5768278505921898e-2, 9.9315352569371185e-2},
    {-1.3618751018973152e-2, 5.8863509637303457e-3, -1.5768278505921898e-2, -9.9315352569371185e-2},
    {2.5486758722741045e-1, -8.3515150069312797e-2, 2.3917878538945490e-2, 1.3359854170705217e-1},
    {2.5486758722741045e-1, 8.3515150069312797e-2, 2.3917878538945490e-2, -1.3359854170705217e-1},
    {-6.7163342444952123e-1, 1.6492094344476185, 9.5490606353488690e-2, 1.4632543347601546e-1},
    {-6.7163342444952123e-1, -1.6492094344476185, 9.5490606353488690e-2, -1.4632543347601546e-1},
    {-2.8486780518298826, -4.4559868157497034, 1.8088541416636548e-1, 1.0370677087499952e-1},
    {-2.8486780518298826, 4.4559868157497034, 1.8088541416636548e-1, -1.0370677087499952e-1},
}};

inline constexpr std::array<ExpRationalTerm, 12> kExpRational12 = {{
    {5.6956719534918916e-5, -2.8323126611573743e-5, -2.8693622912900870e-2, 5.7195266269201834e-2},
    {5.6956719534918916e-5, 2.8323126611573743e-5, -2.8693622912900870e-2, -5.7195266269201834e-2},
    {-4.5806337020856260e-3, 5.1103447368958835e-3, -1.7555750466531694e-2, 8.6626782699216743e-2},
    {-4.5806337020856260e-3, -5.1103447368958835e-3, -1.7555750466531694e-2, -8.6626782699216743e-2},
    {8.3937103673685450e-3, -1.5378506985349030e-1, 1.1532075201584944e-2, 1.1667004146108634e-1},
    {8.3937103673685450e-3, 1.5378506985349030e-1, 1.1532075201584944e-2, -1.1667004146108634e-1},
    {8.9167648211122283e-1, 9.2439455423635803e-1, 6.5243595664181861e-2, 1.3494048993624013e-1},
    {8.9167648211122283e-1, -9.2439455423635803e-1, 6.5243595664181861e-2, -1.3494048993624013e-1},
    {-4.8977050391070106, 5.3675968711107636e-1, 1.3779735260849595e-1, 1.1783580816220011e-1},
    {-4.8977050391070106, -5.3675968711107636e-1, 1.3779735260849595e-1, -1.1783580816220011e-1},
    {4.5021585236101504, -8.3665509028282103, 1.9577205077638812e-1, 4.8482218625082714e-2},
    {4.5021585236101504, 8.3665509028282103, 1.9577205077638812e-1, -4.8482218625082714e-2},
}};

inline constexpr std::array<ExpRationalTerm, 13> kExpRational13 = {{
    {1.4145705009138083e+1, 0.0, 1.8928310128525055e-1, 0.0},
    {-4.6666743552721556e-6, -2.2801722010099949e-5, -2.6779461462152448e-2, 5.1492357299439941e-2},
    {-4.6666743552721556e-6, 2.2801722010099949e-5, -2.6779461462152448e-2, -5.1492357299439941e-2},
    {1.5555890343532617e-3, 2.6831032163102012e-3, -1.8358359547323098e-2, 7.6497461722293046e-2},
    {1.5555890343532617e-3, -2.6831032163102012e-3, -1.8358359547323098e-2, -7.6497461722293046e-2},
    {-7.7866666519825435e-2, -3.4157635922235975e-2, 3.4894597097129684e-3, 1.0266065395564577e-1},
    {-7.7866666519825435e-2, 3.4157635922235975e-2, 3.4894597097129684e-3, -1.0266065395564577e-1},
    {8.1370465176167576e-1, -3.1356537013280400e-1, 4.4227681844221375e-2, 1.2241394450844578e-1},
    {8.1370465176167576e-1, 3.1356537013280400e-1, 4.4227681844221375e-2, -1.2241394450844578e-1},
    {-1.3557256306456384, 3.9691180415290705, 1.0327543303742613e-1, 1.1984170999584577e-1},
    {-1.3557256306456384, -3.9691180415290705, 1.0327543303742613e-1, -1.1984170999584577e-1},
    {-5.9545157815251634, -8.6092840188301296, 1.6293234887303446e-1, 7.7789902358188068e-2},
    {-5.9545157815251634, 8.6092840188301296, 1.6293234887303446e-1, -7.7789902358188068e-2},
}};

inline constexpr std::array<ExpRationalTerm, 14> kExpRational14 = {{
    {-8.4336034208301545e-6, -4.5486244359300429e-7, -2.5079494578674939e-2, 4.6768409880043539e-2},
    {-8.4336034208301545e-6, 4.5486244359300429e-7, -2.5079494578674939e-2, -4.6768409880043539e-2},
    {1.3409746195566083e-3, -2.9677072751421614e-4, -1.8585612278888516e-2, 6.8269684661208332e-2},
    {1.3409746195566083e-3, 2.9677072751421614e-4, -1.8585612278888516e-2, -6.8269684661208332e-2},
    {-3.1337160195030164e-2, 3.2832661586803990e-2, -1.8193288578520441e-3, 9.1070172883824325e-2},
    {-3.1337160195030164e-2, -3.2832661586803990e-2, -1.8193288578520441e-3, -9.1070172883824325e-2},
    {1.0082375088216360e-2, -5.6283292543143189e-1, 2.9517879069964036e-2, 1.1044978576931362e-1},
    {1.0082375088216360e-2, 5.6283292543143189e-1, 2.9517879069964036e-2, -1.1044978576931362e-1},
    {2.4284212774914377, 2.2620334719499225, 7.6840021976113604e-2, 1.1574007010531157e-1},
    {2.4284212774914377, -2.2620334719499225, 7.6840021976113604e-2, -1.1574007010531157e-1},
    {-1.0271103796544667e+1, 1.5766063306002509, 1.3145576993465962e-1, 9.2802868882909303e-2},
    {-1.0271103796544667e+1, -1.5766063306002509, 1.3145576993465962e-1, -9.2802868882909303e-2},
    {8.3626047631438975, -1.6169431822069663e+1, 1.7053352295196096e-1, 3.6246670784009594e-2},
    {8.3626047631438975, 1.6169431822069663e+1, 1.7053352295196096e-1, -3.6246670784009594e-2},
}};

inline constexpr std::array<ExpRationalEntry, 12> kExpRationalTable = {{
    {3, 9.13343e-4, 0.0, kExpRational3},
    {4, 9.59383e-5, 0.0, kExpRational4},
    {5, 1.01686e-5, 0.0, kExpRational5},
    {6, 1.08302e-6, 0.0, kExpRational6},
    {7, 1.15681e-7, 0.0, kExpRational7},
    {8, 1.23793e-8, 0.0, kExpRational8},
    {9, 1.3264e-9, 0.0, kExpRational9},
    {10, 1.42249e-10, 0.0, kExpRational10},
    {11, 1.52655e-11, 0.0, kExpRational11},
    {12, 1.63905e-12, 0.0, kExpRational12},
    {13, 1.76053e-13, 0.0, kExpRational13},
    {14, 1.8916e-14, 0.0, kExpRational14},
}};

}  // namespace specbasis::detail
