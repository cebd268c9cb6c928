// reproduce the annihilation branch and dump its round structure
use num_complex::Complex64;
use piqec::codes::PICode;
use piqec::hilbert::{Axis, LocalOperator};
use piqec::noise::symmetrize;
use piqec::recovery::kl_recover;
use piqec::recovery::pipeline::DecoderContext;
use piqec::schur::rus::project_symmetric_rus;
use piqec::syndrome::measure_syt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let code = PICode::gnu(3, 3, 1.0, 0).unwrap();
    let ctx = DecoderContext::for_weight_one(code.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..120 {
        let q = rng.gen_range(1..=9);
        let ax = [Axis::X, Axis::Y, Axis::Z][trial % 3];
        let op = LocalOperator::pauli(ax, q);
        let v = [
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        ];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let alphas = [v[0] / norm, v[1] / norm];
        let target = code.encode(&alphas).unwrap();
        let mut corrupted = op.apply(&target.embed()).unwrap();
        corrupted.normalize();
        let (sym, _) = symmetrize(&corrupted, &mut rng);
        let (collapsed, synd) = measure_syt(&sym, &mut rng).unwrap();
        let sector = ctx.sector(synd.tableau()).unwrap();
        let (recovered, _) = kl_recover(&collapsed, &sector.basis, &sector.decomposition, &sector.tcode, &mut rng).unwrap();
        let rus = project_symmetric_rus(&recovered, synd.tableau(), &mut rng, 64).unwrap();
        if trial != 89 { continue; }
        println!("trial {trial}: syndrome {} rounds {}", synd.tableau().yy_string(), rus.rounds.len());
        for r in &rus.rounds {
            println!("  round: decoupled {} bits {:04b} retained {} new_path {:?}",
                r.decoupled, r.measured_bits, r.retained, r.new_path);
        }
        println!("  tcode word0 rungs: {:?}", sector.tcode.codeword_coords(0).iter().enumerate().filter(|(_,c)| c.norm()>1e-12).map(|(l,_)| l).collect::<Vec<_>>());
        println!("  tcode word1 rungs: {:?}", sector.tcode.codeword_coords(1).iter().enumerate().filter(|(_,c)| c.norm()>1e-12).map(|(l,_)| l).collect::<Vec<_>>());
        for (l, img) in rus.ladder_images.iter().enumerate() {
            println!("  image[{l}] norm {:.6} weights {:?}", img.norm(),
                img.iter().enumerate().filter(|(_,c)| c.norm()>1e-9).map(|(w,_)| w).collect::<Vec<_>>());
        }
    }
}
