// Generated by gen_reference.py from SciPy 1.15.3. Do not edit.
#pragma once

#include <array>
#include <vector>

namespace apiwatt::reference {

struct FTailCase { double f; double df1; double df2; double p; };
inline const std::vector<FTailCase> kFTail = {
    {0.25, 1, 2, 0.66666666666666607},
    {0.25, 1, 9, 0.62907129982602683},
    {0.25, 1, 245, 0.61752385589422465},
    {0.25, 3, 2, 0.85757282694533821},
    {0.25, 3, 9, 0.85939216129920459},
    {0.25, 3, 245, 0.86129492337710201},
    {0.25, 13, 2, 0.95572012622264169},
    {0.25, 13, 9, 0.98791260551554239},
    {0.25, 13, 245, 0.9966139909468632},
    {1.0, 1, 2, 0.42264973081037427},
    {1.0, 1, 9, 0.34343639613791349},
    {1.0, 1, 245, 0.31829713499686846},
    {1.0, 3, 2, 0.53524199845511},
    {1.0, 3, 9, 0.43628994965113221},
    {1.0, 3, 245, 0.39350226400452271},
    {1.0, 13, 2, 0.60550763151612663},
    {1.0, 13, 9, 0.5150048661340132},
    {1.0, 13, 245, 0.45179364817318868},
    {2.5, 1, 2, 0.2546440075000701},
    {2.5, 1, 9, 0.14830470736655943},
    {2.5, 1, 245, 0.11513638977307762},
    {2.5, 3, 2, 0.29853422370633803},
    {2.5, 3, 9, 0.12551766119622107},
    {2.5, 3, 245, 0.060117084359709493},
    {2.5, 13, 2, 0.32170638584593864},
    {2.5, 13, 9, 0.086484011023344826},
    {2.5, 13, 245, 0.0031598487279160077},
    {8.0, 1, 2, 0.10557280900008414},
    {8.0, 1, 9, 0.019773105690854508},
    {8.0, 1, 245, 0.0050647931717515814},
    {8.0, 3, 2, 0.11313637892567126},
    {8.0, 3, 9, 0.0065853712988196292},
    {8.0, 3, 245, 4.1516708231375049e-05},
    {8.0, 13, 2, 0.11645518782055241},
    {8.0, 13, 9, 0.0018917988722351869},
    {8.0, 13, 245, 2.6292342812110377e-13},
    {40.0, 1, 2, 0.024099927051466827},
    {40.0, 1, 9, 0.0001369365592652299},
    {40.0, 1, 245, 1.1953081935237318e-09},
    {40.0, 3, 2, 0.024489107513839908},
    {40.0, 3, 9, 1.571980787014641e-05},
    {40.0, 3, 245, 4.4854823421798543e-21},
    {40.0, 13, 2, 0.024643316835384715},
    {40.0, 13, 9, 2.4365837542900006e-06},
    {40.0, 13, 245, 3.9743189836323327e-53},
};

struct PtukeyCase { double q; int k; double df; double p; };
inline const std::vector<PtukeyCase> kPtukey = {
    {0.5, 2, 1, 0.21634689593878548},
    {0.5, 2, 2, 0.24253562503632994},
    {0.5, 2, 5, 0.26190739810608588},
    {0.5, 2, 20, 0.27262680204366629},
    {0.5, 2, 120, 0.27570600896676367},
    {0.5, 2, 5000, 0.27631148413187773},
    {0.5, 3, 1, 0.062483143264809839},
    {0.5, 3, 2, 0.064443205572095943},
    {0.5, 3, 5, 0.065701460176608203},
    {0.5, 3, 20, 0.066355943798492883},
    {0.5, 3, 120, 0.066540896491298629},
    {0.5, 3, 5000, 0.066577162405378046},
    {0.5, 5, 1, 0.0081207822685149013},
    {0.5, 5, 2, 0.005989831439997287},
    {0.5, 5, 5, 0.0044719365328505997},
    {0.5, 5, 20, 0.003632994607192826},
    {0.5, 5, 120, 0.0033895654885014166},
    {0.5, 5, 5000, 0.0033415002649990282},
    {0.5, 14, 1, 1.7875507352730846e-05},
    {0.5, 14, 2, 1.9395018688290663e-06},
    {0.5, 14, 5, 1.3658783707956897e-07},
    {0.5, 14, 20, 1.0413716970699817e-08},
    {0.5, 14, 120, 3.3320507410027388e-09},
    {0.5, 14, 5000, 2.5555912210084022e-09},
    {1.0, 2, 1, 0.39182655203060729},
    {1.0, 2, 2, 0.44721359549995798},
    {1.0, 2, 5, 0.48891591956971947},
    {1.0, 2, 20, 0.51234190494862208},
    {1.0, 2, 120, 0.5191289744103148},
    {1.0, 2, 5000, 0.5204669247261845},
    {1.0, 3, 1, 0.19683858159631004},
    {1.0, 3, 2, 0.21581800928547271},
    {1.0, 3, 5, 0.22985078385688207},
    {1.0, 3, 20, 0.23786536230099836},
    {1.0, 3, 120, 0.24023154593376575},
    {1.0, 3, 5000, 0.24070106367454294},
    {1.0, 5, 1, 0.070205627881116825},
    {1.0, 5, 2, 0.06250233552797721},
    {1.0, 5, 5, 0.053834330848368958},
    {1.0, 5, 20, 0.047542633121497563},
    {1.0, 5, 120, 0.045477275147325878},
    {1.0, 5, 5000, 0.045055593108638076},
    {1.0, 14, 1, 0.0051442799584235071},
    {1.0, 14, 2, 0.0015674506794343252},
    {1.0, 14, 5, 0.00028513546344964433},
    {1.0, 14, 20, 4.1761367808786001e-05},
    {1.0, 14, 120, 1.655457930748235e-05},
    {1.0, 14, 5000, 1.3266657641348321e-05},
    {2.0, 2, 1, 0.60817344796939277},
    {2.0, 2, 2, 0.70710678118654757},
    {2.0, 2, 5, 0.78356277073031466},
    {2.0, 2, 20, 0.82732169601282246},
    {2.0, 2, 120, 0.84011149379731287},
    {2.0, 2, 5000, 0.8426385297673934},
    {2.0, 3, 1, 0.44071150396798808},
    {2.0, 3, 2, 0.5234394316261386},
    {2.0, 3, 5, 0.59763756900421972},
    {2.0, 3, 20, 0.64723224820951442},
    {2.0, 3, 120, 0.66317620263481669},
    {2.0, 3, 5000, 0.66642033104401788},
    {2.0, 5, 1, 0.28526183146439082},
    {2.0, 5, 2, 0.32333639794992575},
    {2.0, 5, 5, 0.35427689722925992},
    {2.0, 5, 20, 0.3739224875900809},
    {2.0, 5, 120, 0.38022784405138943},
    {2.0, 5, 5000, 0.38151850851866431},
    {2.0, 14, 1, 0.11044578853284504},
    {2.0, 14, 2, 0.090743009248701795},
    {2.0, 14, 5, 0.059444822968174299},
    {2.0, 14, 20, 0.031289652079760914},
    {2.0, 14, 120, 0.021516891612843883},
    {2.0, 14, 5000, 0.019538696179829791},
    {3.0, 2, 1, 0.71956220199245657},
    {3.0, 2, 2, 0.83205029433784372},
    {3.0, 2, 5, 0.91264069187263863},
    {3.0, 2, 20, 0.95341620225976309},
    {3.0, 2, 120, 0.96404768013502273},
    {3.0, 2, 5000, 0.96605607984934483},
    {3.0, 3, 1, 0.58966704452238183},
    {3.0, 3, 2, 0.71165001723497323},
    {3.0, 3, 5, 0.82010773817343507},
    {3.0, 3, 20, 0.88924320214693586},
    {3.0, 3, 120, 0.91020128010730128},
    {3.0, 3, 5000, 0.91435508626005513},
    {3.0, 5, 1, 0.45666075836402903},
    {3.0, 5, 2, 0.55756907956463142},
    {3.0, 5, 5, 0.6635297680572585},
    {3.0, 5, 20, 0.75006210659033867},
    {3.0, 5, 120, 0.78211671976347108},
    {3.0, 5, 5000, 0.78895277191072133},
    {3.0, 14, 1, 0.27097462760676821},
    {3.0, 14, 2, 0.30104208630052298},
    {3.0, 14, 5, 0.31836465667151903},
    {3.0, 14, 20, 0.31896238453740711},
    {3.0, 14, 120, 0.31474384522180626},
    {3.0, 14, 5000, 0.3134153560408276},
    {4.5, 2, 1, 0.80615164069762946},
    {4.5, 2, 2, 0.91381154862025715},
    {4.5, 2, 5, 0.97551616693786192},
    {4.5, 2, 20, 0.99531512386945087},
    {4.5, 2, 120, 0.99813746828384153},
    {4.5, 2, 5000, 0.9985283286683162},
    {4.5, 3, 1, 0.71261670873175964},
    {4.5, 3, 2, 0.84727544952454803},
    {4.5, 3, 5, 0.94598033955502203},
    {4.5, 3, 20, 0.98755358217826472},
    {4.5, 3, 120, 0.99474340324178012},
    {4.5, 3, 5000, 0.99579946137208686},
    {4.5, 5, 1, 0.61199678122066037},
    {4.5, 5, 2, 0.75434420459304252},
    {4.5, 5, 5, 0.88756736508567791},
    {4.5, 5, 20, 0.96627050581441976},
    {4.5, 5, 120, 0.98429240124581896},
    {4.5, 5, 5000, 0.98720614781246896},
    {4.5, 14, 1, 0.45549743408880261},
    {4.5, 14, 2, 0.56647304565130296},
    {4.5, 14, 5, 0.7015462246644818},
    {4.5, 14, 20, 0.84183394777797027},
    {4.5, 14, 120, 0.90273709428457272},
    {4.5, 14, 5000, 0.91584965551682351},
    {6.0, 2, 1, 0.85263693324105738},
    {6.0, 2, 2, 0.94868329805051377},
    {6.0, 2, 5, 0.99185102365948197},
    {6.0, 2, 20, 0.99960109483263082},
    {6.0, 2, 120, 0.99995627693377009},
    {6.0, 2, 5000, 0.99997750999219737},
    {6.0, 3, 1, 0.78044081487901795},
    {6.0, 3, 2, 0.90790619575351317},
    {6.0, 3, 5, 0.98147075850487975},
    {6.0, 3, 20, 0.99888831723125115},
    {6.0, 3, 120, 0.99987120514147765},
    {6.0, 3, 5000, 0.9999332514100302},
    {6.0, 5, 1, 0.70134334269934273},
    {6.0, 5, 2, 0.84899738065330288},
    {6.0, 5, 5, 0.95958045411426995},
    {6.0, 5, 20, 0.99673692561402549},
    {6.0, 5, 120, 0.99958498858284051},
    {6.0, 5, 5000, 0.99978198278457253},
    {6.0, 14, 1, 0.57331857625952476},
    {6.0, 14, 2, 0.72070617146802796},
    {6.0, 14, 5, 0.87854250477106188},
    {6.0, 14, 20, 0.98038297088937076},
    {6.0, 14, 120, 0.99667098275070798},
    {6.0, 14, 5000, 0.99816626513846429},
};

struct TukeyRefPair { int a; int b; double mean_diff; double p_adj; };
struct TukeyRefSet { std::vector<std::vector<double>> groups; double f; double anova_p; std::vector<TukeyRefPair> pairs; };
inline const TukeyRefSet kTukeySpecExample = {
    {
        {0.0, 0.0, 0.0, 0.0},
        {10.0, 10.0, 10.0, 10.0},
        {0.1, -0.1, 0.05, -0.05},
    },
    47999.999999934509, 7.4763140214860478e-19,
    {
        {0, 1, -10, 2.2204460492503131e-16},
        {0, 2, 0, 1},
        {1, 2, 10, 2.2204460492503131e-16},
    },
};

inline const TukeyRefSet kTukeyBalanced = {
    {
        {24.5, 23.5, 26.4, 27.1, 29.9},
        {28.4, 34.2, 29.5, 32.2, 30.1},
        {26.1, 28.3, 24.3, 26.2, 27.8},
        {27.9, 29.1, 30.4, 28.7, 31.2},
    },
    6.4069220217368343, 0.0046721314976860048,
    {
        {0, 1, -4.6000000000000014, 0.010227438104244424},
        {0, 2, -0.26000000000000156, 0.99673605259540743},
        {0, 3, -3.1799999999999997, 0.092815477982535755},
        {1, 2, 4.3399999999999999, 0.01553973486527338},
        {1, 3, 1.4200000000000017, 0.67711601031104429},
        {2, 3, -2.9199999999999982, 0.13404778041464094},
    },
};

inline const TukeyRefSet kTukeyUnbalanced = {
    {
        {5.1, 4.9, 6.2, 5.7, 6.0, 5.3},
        {6.8, 7.1, 6.4, 7.9},
        {5.5, 5.9, 6.1, 5.2, 6.6, 5.8, 6.3},
        {4.2, 4.8, 5.0},
    },
    13.324525334232099, 0.00012850201439817795,
    {
        {0, 1, -1.5166666666666666, 0.0016273243847998442},
        {0, 2, -0.38095238095238049, 0.5579960780972999},
        {0, 3, 0.86666666666666536, 0.12115177504790009},
        {1, 2, 1.1357142857142861, 0.013569527794968228},
        {1, 3, 2.383333333333332, 8.8114397082894591e-05},
        {2, 3, 1.2476190476190459, 0.013784248366332297},
    },
};

}  // namespace apiwatt::reference
