#![allow(clippy::excessive_precision)]

// Reference values from tests/oracle/bessel_oracle.py (mpmath, 50 digits).

/// (order, x, ln I_order(x))
pub const LOG_BESSEL_I: &[(f64, f64, f64)] = &[
    (0.0, 0.001, 0.0000002499999843750017465192269),
    (0.0, 0.5, 0.06154971918548130394128457),
    (0.0, 10.0, 7.942972083118695554494865),
    (0.0, 29.5, 26.89317812205843855272183),
    (0.0, 30.5, 27.87636609254270671914368),
    (0.0, 100.0, 96.77973268994258371668848),
    (0.0, 10000.0, 9994.475903781432301004509),
    (0.0, 1000000000.0, 999999988.7194285484471217),
    (0.5, 2.0, 0.7160024296894680429821329),
    (0.5, 31.0, 28.36406786455275413525509),
    (0.5, 500.0, 495.9737574175842313869013),
    (1.0, 45.0, 42.16930244201393922828855),
    (2.5, 1e-06, -37.47261794865755144318727),
    (2.5, 40.0, 37.16068517364841859634177),
    (5.0, 31.0, 27.95915702234984793167967),
    (5.0, 200.0, 196.3698755550784458921181),
    (12.0, 35.0, 30.24074103802979773901226),
    (14.5, 60.0, 55.27784732390821764131483),
    (31.0, 100.0, 91.98897507970684089294213),
    (32.0, 100.0, 91.67751957069160380164347),
    (31.0, 100000000.0, 99999989.8707162910691205),
    (50.0, 0.1, -298.2643316098878408167672),
    (50.0, 49.0, 22.17761488079003056006518),
    (50.0, 51.0, 24.99633210171238022483648),
    (100.0, 1.0, -433.0516183940658862615031),
    (100.0, 150.0, 114.2472017447921448425758),
    (383.0, 100.0, -394.2291926069342393621156),
    (383.0, 383.0, 200.0115060406223165274195),
    (383.0, 500.0, 355.3319714208147084282078),
    (383.0, 100000000.0, 99999989.8699876510654782),
    (384.0, 500.0, 354.6247963704145804126666),
    (1000.0, 3000.0, 2829.879080428381379659351),
    (100000.0, 10.0, -890355.4304057143279566899),
    (100000.0, 100000.0, 53277.14884744168415261252),
    (100000.0, 200000.0, 175478.5374836475045753424),
    (100000.0, 1000000000.0, 999999983.7194285501137883),
];

/// (d, kappa, ln C_d(kappa))
pub const LOG_NORM_CONST: &[(usize, f64, f64)] = &[
    (3, 1.0, -2.692463608540486426588011),
    (768, 100.0, 1452.264580339184567632604),
    (64, 100.0, -8.04076543917506395776776),
    (768, 100000000.0, -99993640.49405621849816806),
    (2, 5.0, -5.142558842231878917406491),
    (16, 50.0, -33.95226719162381768333651),
    (64, 80.0, 6.10881266436944857897239),
    (3, 500.0, -495.6232689679871537409239),
];

/// (d, kappa, A_d(kappa))
pub const MEAN_COSINE: &[(usize, f64, f64)] = &[
    (3, 2.0, 0.5373147207275480958778098),
    (64, 100.0, 0.7323801940965821367870368),
    (3, 1.0, 0.3130352854993313036361612),
    (3, 50.0, 0.98),
    (3, 500.0, 0.998),
    (64, 1.0, 0.01562130259862163436523421),
    (64, 50.0, 0.5493944888798394613735767),
    (64, 500.0, 0.9389234972173982515053028),
    (768, 1.0, 0.001302081131495297163463822),
    (768, 50.0, 0.06483123292086186953143216),
    (768, 500.0, 0.4930350311324299817407751),
];

/// (order, x, ln I_order(x)) on a seeded random log-uniform grid
pub const LOG_BESSEL_I_RANDOM: &[(f64, f64, f64)] = &[
    (0.08037019897897135, 721.7889969983663, 717.5793608643203478935149),
    (2.0, 0.0070334819530703556, -11.99358421243928922173028),
    (2872.264158087459, 0.0855625319248758, -29056.44749035043893765871),
    (1.0, 0.004253033584448212, -6.153267685616778993872617),
    (1.0, 0.0034040392160766585, -6.37593827987573026824577),
    (4838.360280436556, 473.8416605399864, -9750.638149057791022547845),
    (0.023505651342991776, 186.1541848143889, 182.6226304528140832556192),
    (0.0, 0.0026256940834599217, 0.000001723566612308571726227482),
    (0.5465824940487555, 0.01987447888843885, -2.402400840084288581006482),
    (0.7093996087481853, 22137.94132676002, 22132.0198583981179520968),
    (30.874574565694992, 562.6278428205968, 557.6951453669187760299765),
    (19.340459776516248, 0.0036736753547525996, -162.1934670484136908763151),
    (0.0, 29.35826971416102, 26.75387702445061926852579),
    (460.65166993203434, 15.503037322082786, -1424.85210027410331112322),
    (1.477386532120159, 0.17212314139032564, -3.889494070869101556934286),
    (477.5048460962267, 0.005453748382151706, -5291.497465165094690957964),
    (9.34755775837389, 1.2339035383755401, -18.06853027650834953237089),
    (45.0561536566011, 0.004558351458313947, -403.4573474217415748220228),
    (0.09767257149805403, 1.1981253454456509, 0.3033854032564731105906842),
    (3.3899252891867646, 455168.0301453791, 455160.5969835336258533127),
    (2.0, 143.62613129310148, 140.2104856612936538241795),
    (0.7629306754416253, 1809.915488084805, 1805.245940076039682928865),
    (30.155825787484062, 12.759920886874967, -18.02636016309156011135407),
    (4656.789109747588, 18.48779159052451, -24323.42605955892493394904),
    (0.023121529824828627, 2057.918596622136, 2053.184993534256094708822),
    (9090.2460115722, 24964.511913350503, 23321.09744405423689890684),
    (2.06418517529294, 1042.0161329615607, 1037.620812584797505861522),
    (1.0, 1.5818925687155363, 0.06347849650784869301282483),
    (9.165538105916784, 0.09201740328279827, -41.39580473194089318637188),
    (269.2652303904559, 3.81135241010154, -1067.532880090881211923833),
    (9.528843498840528, 0.03142653808693254, -53.58273688917903883577462),
    (0.46455248194626375, 0.01707400039509251, -2.091292089564594415549024),
    (20.013236006042195, 2278.087418220964, 2273.215060888945910873466),
    (124.83557222123669, 2.654432599213701, -445.725602779168240797593),
    (0.031470827897240296, 0.02299775526566722, -0.1230418773973114088662044),
    (0.011813493836969662, 30188.536124540344, 30182.45958137915476126101),
    (0.4915688267750062, 0.020468571395349383, -2.131247387022343213270271),
    (45.59052690753249, 0.7370638816896904, -176.8890434783337553721048),
    (1429.5906373435412, 356463.894113981, 356453.7165105376723703733),
    (274.60502908095566, 12.876371549605036, -759.5880934155329860620781),
    (5144.193839721538, 1334.0616800508462, -5283.729517848239231454267),
    (2.4457822190627003, 3.5243590281241026, 1.069752022283203927312546),
    (2.527294097655983, 0.05193807367564155, -10.45778728666768848763801),
    (4.403126978634158, 0.009757863643987284, -27.23977136254503150677835),
    (0.04114125981092681, 126.19800028551529, 122.8611234313719038245373),
    (4939.608751750684, 333.91456795674594, -11791.87755471218877629065),
    (0.0, 336.21794556025765, 332.3904995657253734935301),
    (0.32624700941039975, 1.3381534388078378, 0.297040171647521104230464),
    (0.05458249511475177, 43695.05983147893, 43688.79840060872351739333),
    (6.250816573261989, 22.62100562548477, 19.27073353548368402288725),
    (0.0, 5585.541513608145, 5580.308629123466436303974),
    (7.44271966073831, 1692.4307972409, 1687.778601977193969479471),
    (0.1703295661460949, 369988.75420802133, 369981.4246558417055387524),
    (138.16737774737328, 168776.52668097007, 168769.5330228799949693609),
    (0.6145230000515111, 611.2990575881456, 607.1722214223152221474396),
    (1.0, 46.29901101132935, 43.45432348229136148314594),
    (1.3619997220171154, 0.10118934960710887, -4.255422827410402394497547),
    (10.379636375254687, 534.5364536863635, 530.3761820200452505000266),
    (537.5211839007442, 6681.928386767196, 6654.995727119375862677243),
    (0.27310273448054023, 4.037935029690752, 2.446579986296458601748383),
    (0.15830983650242025, 27.229306859865847, 24.66243075430365414235527),
    (8662.066632976397, 12913.002338854267, 10098.61206748617456783364),
    (0.14516759305157503, 279.4160089775448, 275.6811299601793997641663),
    (710.2225491661803, 3222.1937403539237, 3139.264288249339769904889),
    (7032.178291515433, 0.00530692719198539, -96980.08014075847217608916),
    (6.614239149369473, 1.095562904056046, -11.6993379381056416810008),
    (8156.314856135288, 310.7129269164979, -24151.88895400991713191227),
    (2.0, 1.2475619421379898, -1.509391260017360696126021),
    (1018.3401026277977, 0.011998658077169513, -11248.93094767113003749255),
    (185.76243779209457, 0.06221206700704238, -1432.940531009962120594837),
    (4.013751256116874, 527.9344387422475, 523.8659789808680128581912),
    (2.0, 3.652131913009875, 1.502044431947995298110444),
    (4794.927431863868, 3335.707724964529, 275.820011714066695240275),
    (0.057840255642590765, 0.022927478952456636, -0.2276294136937070830920574),
    (690.2587047883643, 0.020680868764180804, -6981.847082186334010754153),
    (7617.90689871266, 823.0280457708725, -14597.49152689237421385915),
    (19.586654558326902, 0.01509574906841554, -136.8012659155237031586632),
    (2.0, 703.1889330045601, 698.9895133460779371965042),
    (3997.1351278590587, 8.0220419886326, -23605.2959516958211521915),
    (905.589776317129, 0.07931969506675617, -8187.234730747949429811314),
];
