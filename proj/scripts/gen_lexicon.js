// Regenerates resources/lexicon/{positive,negative}.txt from the word lists
// below. Entries are Porter stems (the pipeline matches stemmed tokens), so
// run this after any edit instead of editing the .txt files directly.
//
// Usage: node scripts/gen_lexicon.js  (needs `npm install porter-stemmer`)
'use strict';

const fs = require('fs');
const path = require('path');
const { stemmer } = require('porter-stemmer');

const POSITIVE = [
  'good', 'great', 'excellent', 'amazing', 'awesome', 'fantastic', 'wonderful',
  'delicious', 'tasty', 'tastiest', 'fresh', 'friendly', 'love', 'loved',
  'lovely', 'best', 'nice', 'perfect', 'enjoy', 'enjoyed', 'enjoyable',
  'pleasant', 'happy', 'clean', 'cozy', 'charming', 'attentive', 'prompt',
  'generous', 'affordable', 'recommend', 'recommended', 'favorite', 'superb',
  'outstanding', 'impressive', 'impressed', 'delightful', 'satisfying',
  'satisfied', 'flavorful', 'juicy', 'tender', 'welcoming', 'helpful',
  'polite', 'courteous', 'efficient', 'authentic', 'beautiful', 'brilliant',
  'fabulous', 'terrific', 'stellar', 'exceptional', 'divine', 'heavenly',
  'memorable', 'glad', 'gem', 'worthwhile', 'yummy', 'scrumptious',
  'mouthwatering', 'vibrant', 'lively', 'relaxing', 'comfortable', 'spotless',
  'speedy', 'cheerful', 'gracious', 'accommodating', 'premium', 'quality',
  'winner', 'winning', 'smile', 'smiling', 'thank', 'thanks', 'praise',
  'praised', 'bargain', 'solid', 'reliable', 'consistent', 'crispy', 'creamy',
  'savory', 'zesty', 'aromatic', 'fragrant', 'hearty', 'homemade', 'heavenly',
  'refreshing', 'succulent', 'exquisite', 'splendid', 'marvelous', 'magnificent',
  'phenomenal', 'incredible', 'unbeatable', 'flawless', 'gorgeous', 'inviting',
  'warmhearted', 'kind', 'kindly', 'genuine', 'honest', 'fair', 'fun',
  'festive', 'playful', 'stylish', 'elegant', 'classy', 'tidy', 'immaculate',
];

const NEGATIVE = [
  'bad', 'terrible', 'awful', 'horrible', 'disgusting', 'gross', 'bland',
  'stale', 'soggy', 'rude', 'slow', 'dirty', 'filthy', 'overpriced',
  'mediocre', 'poor', 'worst', 'disappointing', 'disappointed',
  'disappointment', 'hate', 'hated', 'avoid', 'nasty', 'unfriendly',
  'unhelpful', 'burnt', 'burned', 'greasy', 'tasteless', 'flavorless',
  'watery', 'tough', 'chewy', 'rubbery', 'undercooked', 'overcooked',
  'inedible', 'smelly', 'stink', 'stinky', 'noisy', 'cramped', 'crowded',
  'sloppy', 'messy', 'broken', 'shabby', 'rundown', 'dingy', 'dull', 'boring',
  'lousy', 'pathetic', 'ridiculous', 'insulting', 'insulted', 'ignored',
  'neglected', 'unprofessional', 'incompetent', 'careless', 'unacceptable',
  'unsanitary', 'unhygienic', 'roach', 'cockroach', 'moldy', 'rotten',
  'spoiled', 'rancid', 'crummy', 'dreadful', 'atrocious', 'appalling',
  'abysmal', 'subpar', 'lackluster', 'forgettable', 'regret', 'regretted',
  'complaint', 'complain', 'complained', 'scam', 'ripoff', 'overrated',
  'underwhelming', 'letdown', 'failure', 'failed', 'fail', 'worse', 'useless',
  'worthless', 'annoying', 'annoyed', 'irritating', 'irritated', 'frustrating',
  'frustrated', 'angry', 'upset', 'furious', 'miserable', 'unpleasant',
  'uncomfortable', 'unappetizing', 'disaster', 'disastrous', 'horrendous',
  'grimy', 'sticky', 'lukewarm', 'skimpy', 'stingy', 'chaotic', 'hostile',
  'dismissive', 'condescending', 'offensive', 'gruff',
];

function stems(words) {
  const out = new Set();
  for (const w of words) out.add(stemmer(w.toLowerCase()));
  return [...out].sort();
}

const pos = stems(POSITIVE);
const neg = stems(NEGATIVE);

const both = pos.filter((s) => neg.includes(s));
if (both.length > 0) {
  console.error('stems with both signs:', both.join(', '));
  process.exit(1);
}

const dir = path.join(__dirname, '..', 'resources', 'lexicon');
fs.mkdirSync(dir, { recursive: true });
fs.writeFileSync(path.join(dir, 'positive.txt'), pos.join('\n') + '\n');
fs.writeFileSync(path.join(dir, 'negative.txt'), neg.join('\n') + '\n');
console.log(`positive: ${pos.length} stems, negative: ${neg.length} stems`);
