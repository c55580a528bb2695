// Generated by tools/gen_constants.py. Do not edit.
#pragma once

namespace zmoment::detail {

// Stieltjes constants gamma_k, k = 0..40.
inline constexpr double kStieltjes[] = {
    0.577215664901532860606512090082,
    -0.0728158454836767248605863758749,
    -0.00969036319287231848453038603521,
    0.00205383442030334586616004654275,
    0.00232537006546730005746817017753,
    0.000793323817301062701753334877444,
    -0.000238769345430199609872421841908,
    -0.000527289567057751046074097505479,
    -0.000352123353803039509602052165001,
    -3.43947744180880481779146237982e-5,
    0.000205332814909064794683722289237,
    0.000270184439543903526672902082068,
    0.000167272912105140193353501543341,
    -2.74638066037601588600076036934e-5,
    -0.000209209262059299945837139697345,
    -0.000283468655320241446642934474997,
    -0.000199696858308969774707784563203,
    2.62770371099183366994665976305e-5,
    0.000307368408149252826592754751949,
    0.000503605453047355629055596437717,
    0.000466343561511559449400594824434,
    0.000104437769756000115810795674368,
    -0.000541599582203997701655196173174,
    -0.00124396209040824577929974159954,
    -0.00158851127890356156190619661152,
    -0.00107459195273848882472429198735,
    0.000656803518637154431504773003356,
    0.00347783691361853820900735957426,
    0.00640006853170062945810722822195,
    0.00737115177047223913441240242356,
    0.00355772885557316094791353774891,
    -0.00751332599781522893313516008158,
    -0.0257037291084204017934878837803,
    -0.0451067341080802199049828496996,
    -0.051126928021508464425075820038,
    -0.0203730436038613127057518973025,
    0.0724821588168113337338004442204,
    0.236026382274301502720981762199,
    0.428963446384809152736861546539,
    0.517921842692923718978893057516,
    0.24872155939461546508449191044};

// Riemann-Siegel corrections C_k(p) as polynomials in (p - 1/2).
inline constexpr double kRsC0[] = {
    0.38268343236508977172845998403,
    3.79817817691387264094916207774e-62,
    1.74896187231008179744118586949,
    -6.75581755893670733066116167712e-62,
    2.11802520768549637318456427826,
    -2.83723602409822430249238949233e-61,
    -0.870721667051148073918924077382,
    -1.04694228281188439981563747767e-61,
    -3.47331122434651670730641166938,
    3.36155220286908744312862915942e-61,
    -1.66269473089993244964313630119,
    3.70575104896398796127437086026e-61,
    1.21673128891923213447689352804,
    -9.28733917797952086357246156711e-62,
    1.301430416100797577300605381,
    -3.14557811093608630181232027621e-61,
    0.0305110218273616724210898712398,
    -1.34744579951522630577488022584e-61,
    -0.375580305154509524279819321229,
    5.71522621392304424411271767376e-62,
    -0.108578441656406597435469759013,
    4.07830484382608807884239418816e-62,
    0.0518329029995496233757605106732,
    -1.39333384244797409447226661252e-62,
    0.0299994806199022759204008495691,
    4.09616652604472335652538535931e-62,
    -0.00227593967061256422601994851021,
    8.95416900850939995615257277658e-62,
    -0.00438264741658033830594007013585,
    2.45312729652084646094819157852e-62,
    -0.00040642301837298469930723272116,
    1.09912379590023668884630530543e-62,
    0.000400609778542211392789103146077,
    3.28230659770392684282666667502e-63,
    8.97105799138884129783418195379e-5,
    -1.15668508150981286138672803616e-61,
    -2.30256500272391071161029452574e-5,
    -1.37730880369471826972247571302e-61,
    -9.38000660190679248471972940127e-6,
    7.1813836024375524042131757622e-62,
    6.32351494760910750424986123959e-7,
    1.82484589882881206264262275289e-61,
    6.55102281923150166621223123133e-7,
    1.72982979135082444643335810584e-62,
    2.21052374555269725866086890382e-8,
    -1.23160673504833553278527027386e-61,
    -3.32231617644562883503133517018e-8};
inline constexpr double kRsC1[] = {
    4.27817144714472627472622163588e-64,
    -0.0536502052567506940599828079113,
    1.79670070146445287067140774223e-62,
    0.110278187410814824398963620719,
    2.32044380968118395731947784784e-62,
    1.23172001543152263131956529162,
    -1.78813135236857039337001457692e-61,
    1.26349648627994578841755482191,
    -3.87204553895018119168656119482e-61,
    -1.69510899755950301844944739907,
    1.68204500464132517009113820818e-61,
    -2.99987119676501008895548735894,
    9.06342077093501728142682697594e-61,
    -0.108199449598992086426922577874,
    5.80230414028310273217394205726e-61,
    1.9407662946212712687938763254,
    -3.50701379218918247650482606461e-61,
    0.783842356150068653288434574887,
    -3.43488022788051573520733833697e-61,
    -0.505482966790036591879021413262,
    1.5626223039794540481649773983e-61,
    -0.384507234960579740513427388531,
    -5.96603383671525353840610336361e-61,
    0.0374726464653153206759444749402,
    -1.65856092640090814124266976037e-60,
    0.0909202661097317631725814245058,
    -5.67634652389018287730087251371e-61,
    0.0104492375500645092182011397266,
    -3.12864709528418948572412515909e-61,
    -0.0125829796515834164974789222459,
    -1.13405411638738011709239408333e-61,
    -0.00339950372115127408505894886137,
    4.79407757318908472536003306804e-60,
    0.00104109505377148912682954240655,
    6.77692398411047310286527855193e-60,
    0.000501094905111848686035565267274,
    -4.15611039685091126420203390718e-60,
    -3.95635966900318155954711855696e-5,
    -1.23186657811786416618984515422e-59,
    -4.76245924535718963865409830268e-5,
    -1.3518670928634342972517506243e-60,
    -1.85393553380851322734349064569e-6,
    1.10671226399452436138545716176e-59,
    3.19369180800689720404663539343e-6,
    -7.98325913248242490636058880937e-61,
    4.09078076085060663265089453677e-7,
    -1.70864256595502577533117840949e-59,
    -1.54466243325766321284375723273e-7};
inline constexpr double kRsC2[] = {
    0.00518854283029316849378458151923,
    -9.35613358787250337293418596532e-64,
    0.00123786335522538984133826974438,
    2.33997056330009265941690475338e-63,
    -0.181375057251669974114918964094,
    6.16947100675630049223302402738e-62,
    0.142914927485321265411656033765,
    -2.55929461458297867508123630017e-62,
    1.33033917666875653250993329999,
    -5.66808515431447405189095647087e-61,
    0.352247235340373367753276555058,
    -6.91669045142458247180654811098e-61,
    -2.42100159589195072378153054334,
    5.17257947858243093557149987089e-61,
    -1.67607870225381088533346181492,
    8.29443591011386679299841444147e-61,
    1.36894167233283721842349153807,
    -5.33094776984127244231759560148e-61,
    1.55390194302229832214563952656,
    2.93620447354198563762495417849e-60,
    -0.172216427347299805195825869989,
    1.06178336921358538277253757928e-59,
    -0.635906805504543098897049023558,
    4.71187387341396462434495188746e-60,
    -0.0991164987304120810542356434137,
    3.34478300340478656620736467831e-60,
    0.140334800673870089507382548983,
    1.48937602056152352222531229377e-60,
    0.0478235201982729223643880350651,
    -7.52737675418597580104718545892e-59,
    -0.0173560406414797807979586470922,
    -1.28397307072401568835772288207e-58,
    -0.0102250125340285918444766041313,
    9.37404766569782950323728424688e-59,
    0.000927414915979488789942700143714,
    3.2875094185714293713303079297e-58,
    0.00135721943723733853452533619958,
    4.24588349271397227665506070402e-59,
    6.41369012029388008996238736395e-5,
    -4.01804765247419423563598976204e-58,
    -0.000123008056981966298833423229366,
    3.35267007919122443364317646262e-59,
    -1.8313507404789202554767554398e-5,
    8.20859941257461837255395272758e-58,
    7.82162860432262730850139938462e-6,
    1.20077218103618406808962793397e-57,
    2.00875424847599455034985293919e-6,
    1.09558636488949209669613129749e-57,
    -3.35327653931857137372749727241e-7,
    -9.76191254131474558484449597636e-59,
    -1.46160209174182309264510097123e-7};
inline constexpr double kRsC3[] = {
    6.98906440233691634864295308383e-66,
    -0.00267943218143891380853967145989,
    -4.23038340645520243593348258613e-64,
    0.0299537210910351496373132949157,
    -6.62061686789290604092317938839e-63,
    -0.0425701725418286979850193511169,
    5.81800542339465249928996767192e-62,
    -0.289979657798038875068932094787,
    2.66470131364718954102443350087e-61,
    0.488883199923544597253747464072,
    -7.88146272931469253104996787451e-62,
    1.23085587639574608119312504336,
    -5.8295455363850680766855651333e-61,
    -0.82975607085274087041796910433,
    6.03881239890678452409044031005e-61,
    -2.2497635366665668665204501266,
    -6.21292233474132445566326763156e-60,
    0.0784513996100547137936547362018,
    -2.96915872407163080397848307702e-59,
    1.74674928008688940039198666645,
    -1.81686195273026926135314581688e-59,
    0.459680809797499351092373061732,
    -1.80742424746247831893822851739e-59,
    -0.66193534710397749464339040009,
    -9.93730155802203597779346584901e-60,
    -0.315904410361736345789796329733,
    5.80114086424304725024690660224e-58,
    0.128447925452074959885118474762,
    1.21807404986356922641983182314e-57,
    0.100733827166261523009694502075,
    -1.07005799675599257003563679415e-57,
    -0.0095301838488252677595046598423,
    -4.52663253018515828189491206025e-57,
    -0.0192644216875140888984009806971,
    -7.06877739685977058655603036544e-58,
    -0.00124646371587692917124790716458,
    7.71654436266944839899620601294e-57,
    0.00242439696411030857397215245841,
    -7.58642780531226705759038362888e-58,
    0.000437647697741857018275612903956,
    -2.1345277694667658152685458786e-56,
    -0.000207140326870017912759130783041,
    -3.59698491644735968723781224667e-56,
    -6.2743445041865155605261095803e-5,
    -3.75701676302441569524648445435e-56,
    1.15753438145956693483789208989e-5,
    3.69725888312018871381639506776e-57,
    5.88385492454037978388597885697e-6,
    9.33576068294421185584175515904e-56,
    -3.12467740069633622086961449076e-7,
    1.5306058493988555221418523582e-55,
    -4.02406577549895950097981493137e-7};

}  // namespace zmoment::detail
