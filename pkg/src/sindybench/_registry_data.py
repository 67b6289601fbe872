"""Precomputed registry constants: dominant periods and reference ICs.

Regenerated by ``tools/build_registry_data.py``: periods come from the
spectral peak of a long integration, reference ICs are attractor samples
taken after a long burn-in, spaced several periods apart.
"""

REGISTRY_DATA: dict = {'BurkeShaw': {'dominant_period': 1.0684412808563462,
               'reference_ics': [[-0.4566557373855823, 0.6725852252312694, 0.9680668997473949],
                                 [-0.21717131802409537, -0.08353798429557088, -0.2559687219452289],
                                 [-0.41678679877346736, 0.7209349083180463, 1.5321341821400227],
                                 [-0.8221392873361392, 1.2027429177900084, 0.7016268234657871],
                                 [-1.3154427574184306, 2.0627287920678623, 0.4542490978205472],
                                 [-0.7904262934344362, 1.124717032914054, 0.6473360773994423],
                                 [-0.2775770772368416, 0.3894424730380702, -0.33032283606488316],
                                 [-0.07665234020839895, 0.15583842415898128, 0.27712708931587654],
                                 [-0.02481665592149072, 0.11004693077479007, 0.2685945325386652],
                                 [-0.48820456246160093, 0.7461840636909167, 1.0504293942532108],
                                 [0.3090203803132934, -0.3250952460601496, 0.30897224309714866],
                                 [0.44724387622046097, -0.4154953781068029, -0.8015062979119344]]},
 'Chen': {'dominant_period': 0.5569431473061136,
          'reference_ics': [[6.173657310612021, 4.3263294062974635, 23.15469065797634],
                            [-0.8054443929439121, -2.6443587718292307, 19.497488437172017],
                            [0.2401979741479388, -0.17377389552244, 15.331913975752906],
                            [9.310442612275137, 9.532514360065056, 26.473022700184206],
                            [5.286319168481885, 6.929517790354801, 16.071487068501003],
                            [-6.42902896489486, -10.764889758696423, 26.33794494622584],
                            [5.859786329992643, 2.634600728138584, 26.303710198882754],
                            [0.7109443860292335, 4.348864029088573, 24.863715138412456],
                            [6.768515134151306, 4.549511136670516, 24.173614561134663],
                            [-17.745380457404675, -6.78651410954475, 42.85014204618067],
                            [-2.8729296940936284, 1.3997849378472058, 25.526401660901357],
                            [-4.5923020578420175, -6.238043438186371, 15.382247305201899]]},
 'Dadras': {'dominant_period': 1.0218360985832653,
            'reference_ics': [[0.5519589842021173, -0.893091782843573, -0.14141776675806111],
                              [0.1230612083460815, -1.9978034900710457, -0.1123648881047454],
                              [0.2503609040393429, 1.16077240699682, 0.044681910897972237],
                              [-0.21398409822256603, -0.8885322776546234, 0.03174109574551572],
                              [0.196418594938536, 0.8066403176259712, 0.02668410910193827],
                              [-4.282074263635645, -1.0081951250707313, 1.7716827174415402],
                              [-1.2863736222224533, -7.753105446142466, 0.7058644474413832],
                              [1.7961812048601058, 3.7955104322194795, 0.9353218701111591],
                              [6.081045411828622, 4.115165467483073, 3.7369354931036924],
                              [1.8301941822859886, 0.4416426214339577, 0.2933491521600124],
                              [-0.7271370222967195, -2.5519990290113617, 0.2730586033307459],
                              [0.6309573395004461, 1.562644123048983, 0.18187324616210682]]},
 'GenesioTesi': {'dominant_period': 6.192706386926338,
                 'reference_ics': [[0.8971469517785461, -0.3863627763493811, -0.20278318780610768],
                                   [0.29547181734888595, 0.8835935800492152, 0.01266209208297545],
                                   [0.4991604209084044, 0.361559816233558, -0.44850893781708134],
                                   [0.29174635068854077,
                                    -0.036922503662745965,
                                    -0.3421536672599983],
                                   [0.6547709769034221, -0.3632870995105609, 0.07659044601658105],
                                   [0.610165247937972, 0.25729304866285935, -0.5384471211071067],
                                   [-0.37402435291992053, 0.29063063580003734, 0.7407437308801162],
                                   [-0.13174315781769677, 0.0830157066235793, 0.21886079321177349],
                                   [0.22126684246148653, 0.39348692752494735, -0.08788631829104335],
                                   [-0.2043775098229661, -0.44728146723715784, 0.2309042267549963],
                                   [0.10941730855776663, 0.07774460530948824, -0.05135867499085716],
                                   [0.02279090994994892,
                                    -0.5363567604207066,
                                    -0.045632306863356606]]},
 'Halvorsen': {'dominant_period': 1.5625953732524067,
               'reference_ics': [[-2.612669370871475, 0.7899257102741871, -5.435296728701529],
                                 [0.7547734897905618, -5.695593674914783, -3.2046259623377784],
                                 [-5.934551383865368, -3.856082590812991, 0.7021089421494145],
                                 [-4.569423477447381, 0.6213726871929851, -6.127275349784349],
                                 [0.4943032238448706, -6.2425813357004, -5.345936088603291],
                                 [-6.242935372513523, -6.185721729343256, 0.2928860088294427],
                                 [-7.086947917219457, -0.021562638780791794, -6.084821063529861],
                                 [-0.4967260998836157, -5.719854572760141, -8.043321426703463],
                                 [-5.097693633568946, -9.038143695711057, -1.1829436665793562],
                                 [-10.03368356172476, -2.1196597389324614, -4.173173948942179],
                                 [-3.313075451719211, -2.9214499458218883, -10.957521095197668],
                                 [-1.363301166859406, -11.694401885664373, -4.708420435974304]]},
 'Lorenz63': {'dominant_period': 0.5528253393485573,
              'reference_ics': [[-5.025422967618459, -6.238699870171252, 20.567267544770274],
                                [2.8475359776494993, 5.861340736377169, 4.123185891087565],
                                [-12.272966945460729, -12.420269213008114, 31.75767775552496],
                                [-2.943375887716253, -4.723544905387355, 18.82263197376908],
                                [10.131160676325976, 17.34230422740805, 17.03909759967318],
                                [5.179906254541479, -1.9138654596779103, 31.622438261342598],
                                [-0.40700172907916965, 0.4863367368858654, 19.8323628966891],
                                [-13.231959782887868, -18.478676515090367, 26.848774082330454],
                                [-3.240059335602739, -3.385253100996099, 20.511016697316336],
                                [-3.8591507094453577, -7.191408240723884, 9.712308073188991],
                                [-8.010054640929367, -2.44378623436262, 32.52367716614459],
                                [1.5874597106975306, 3.19947116715009, 20.3107243744105]]},
 'Lorenz96_4D': {'dominant_period': 1.053647367771145,
                 'reference_ics': [[1.5504241691969303,
                                    1.7069966105424914,
                                    4.483126242870932,
                                    -7.630803297941028],
                                   [1.4449093245769347,
                                    12.36120323658914,
                                    1.6215224105791872,
                                    -0.4636612246032846],
                                   [-7.156659960385163,
                                    -4.907348118777698,
                                    3.8690728296388643,
                                    3.164132852428502],
                                   [-3.130842162585606,
                                    1.5949302109106496,
                                    10.151271793992645,
                                    0.19703877847272053],
                                   [4.768016821172516,
                                    9.605353204169335,
                                    8.90330679429195,
                                    -2.9361415885094257],
                                   [14.042667985810784,
                                    1.0964991877244565,
                                    -4.642784386048062,
                                    3.173021053937277],
                                   [0.41189370696371225,
                                    -0.5414964782531885,
                                    11.909027040157257,
                                    -0.34802899130585224],
                                   [-3.4297722937865722,
                                    2.1421711402405,
                                    5.753867221148322,
                                    1.6142369294244638],
                                   [4.597708050394697,
                                    11.013862556408702,
                                    8.555963475366505,
                                    -3.3127895409663144],
                                   [-2.06904958607009,
                                    14.472524797624935,
                                    -0.43980972711669936,
                                    0.014016677474809797],
                                   [-0.880811558082495,
                                    -0.35552989381529077,
                                    14.495489989472757,
                                    -2.953657213487274],
                                   [0.616427091534858,
                                    0.09242222575213364,
                                    -1.1724400428515176,
                                    11.852965407120069]]},
 'LuChen': {'dominant_period': 0.874264142781337,
            'reference_ics': [[9.32645524678446, 10.613343195781608, 17.890923981764427],
                              [5.320804215423662, 4.309491462181637, 23.829467712034496],
                              [12.393731777084284, 8.27376789172178, 30.46620734948443],
                              [-0.6051318219271035, -2.8352339824111383, 23.73063497990218],
                              [4.246126839282377, 5.316494250068116, 12.704055937076213],
                              [7.811886777999509, 10.576983424336692, 10.343830625650936],
                              [-2.135312519807321, -2.1196824000487484, 16.201995623125985],
                              [13.769716841325126, 16.513177731768383, 18.66041408973388],
                              [-5.223356265921608, -5.272808626555348, 18.86107544390774],
                              [5.753245484101276, 6.534496723228328, 16.548012181551286],
                              [-2.9180858939715306, -2.4081528195238313, 18.711238450386908],
                              [0.8447870202225232, -4.63627404452328, 29.83851253359988]]},
 'NoseHoover': {'dominant_period': 3.337912662455973,
                'reference_ics': [[-3.713480176680197, 2.123827749874239, -1.0191609080825712],
                                  [-1.592199717171502, 0.9587920583590673, -1.7238066623656967],
                                  [-0.2304308440592149, -0.1226943473411006, 1.3880681559797239],
                                  [-2.212328223127224, 3.033679974182244, 1.7678251372275715],
                                  [-0.049669146697231284,
                                   -0.04896304647254945,
                                   -3.1000419199305553],
                                  [0.2758838487143714, -0.19009097004760314, -1.3383471975525865],
                                  [0.206540426801627, 0.6236440311042839, 0.6781121161311047],
                                  [-0.0746025931493142, -0.3502534318721561, 0.8287220402103005],
                                  [2.4682484048085547, -0.4889087717456443, 3.4833718784878367],
                                  [0.36608349898678716, -0.7523026306200179, -0.43397617246919606],
                                  [0.6417254859748732, -0.2725218785334789, 4.352868868378593],
                                  [2.0003516249908655, -1.2184586959406363, -1.5380281226730879]]},
 'Rossler': {'dominant_period': 3.056140814327284,
             'reference_ics': [[-5.137614630989475, -6.894226536413626, 0.01758813347916869],
                               [-8.174380516102602, 2.858799060926152, 0.014688423182456736],
                               [-2.5043488476482727, 1.6845760915857901, 0.0829752512542847],
                               [1.1382106752924863, 3.758504639162408, 0.055493011993492145],
                               [7.64863523412807, -5.278507971463161, 0.20679466641172062],
                               [2.0298755845301777, -3.240183208329536, 0.045973175857040444],
                               [-4.304687472194742, -3.2322794281297726, 0.019482581774617678],
                               [-6.078725262046155, 6.273205670808023, 0.01806818138558915],
                               [-1.4667778939873006, 2.792750493637686, 1.155964238685044],
                               [3.664981203697232, 2.3318634259858126, 0.11621246907700644],
                               [5.026847284832378, -4.177950367265543, 0.09100906526401713],
                               [-3.898271634699094, -6.676561544914285, 0.01965673177521931]]},
 'Rucklidge': {'dominant_period': 2.8539197304586175,
               'reference_ics': [[-1.1221967901177985, -0.5775666346232183, 4.2748708696750155],
                                 [5.833910280692362, 0.09666062526456226, 10.225501455931388],
                                 [-0.4879827791294728, 0.03578280373635476, 3.654440451886324],
                                 [-1.0802230336712109, 1.8891637760249436, 6.822455383781611],
                                 [0.49067994445584695, -2.740879650386363, 7.384633401702464],
                                 [0.4221444479696047, -3.3857624144459475, 8.268552361156008],
                                 [3.451721234541851, 4.741446918239718, 7.2772788021306285],
                                 [0.9714283001860271, -4.142433097602548, 9.876844821935181],
                                 [-4.237840222640215, -3.8577195798766324, 4.709620488092598],
                                 [-1.8747510795152706, 2.9545951119177087, 8.896722564726282],
                                 [7.446473946050735, -2.179165764243513, 12.494243345821182],
                                 [0.020164509009276105, 2.665609706588206, 6.794519030179269]]},
 'SprottB': {'dominant_period': 8.548051978533083,
             'reference_ics': [[0.5870513620145705, 1.118661693286191, -0.7777379496309625],
                               [1.7167035025520385, 1.3558308090183622, -0.13874291900229818],
                               [3.8482547151062714, 2.0912534894620043, 0.12341198322899222],
                               [-0.3180848321204174, -1.3604265717126351, -1.5257788150091367],
                               [2.6349953843609177, -2.0217893583042903, -4.188681621648838],
                               [-0.6215366523595074, -0.0952892878151585, 0.14450397886014563],
                               [-1.874123138434729, -0.8384197307705004, 2.7988065401697906],
                               [-0.23787002209117172, -0.36228076666375497, 0.6528014753802506],
                               [1.157443454480396, 0.6713582736106506, 1.3143632601577648],
                               [1.3209703039040674, 2.135154356595408, -2.565363262404894],
                               [-1.0666980847710454, -0.8384063635142527, 0.586476916300815],
                               [-0.5830804895014461, -0.27587709978139424, 2.5510313704791363]]}}
